#pragma once

#include <optional>

#include "niep3/spectra.hpp"

namespace niep3 {

/// Closed interval for the largest diagonal entry. empty means no feasible
/// value exists (lo/hi are meaningless then).
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;

    static Interval of(double lo, double hi) { return {lo, hi, false}; }
    static Interval none() { return {}; }

    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    bool contains(double x, double slop = 0.0) const {
        return !empty && x >= lo - slop && x <= hi + slop;
    }
};

/// The closed-form range constants. L2/L3 are absent where their radicand
/// is negative; U1/U2 come from the conjugate-pair corollaries and are
/// absent when undefined. For a conjugate pair L1 holds the lower bound
/// (a + 2b)/3 and L2/L3 are absent.
struct BoundConstants {
    double L1 = 0.0;
    std::optional<double> L2;
    std::optional<double> L3;
    std::optional<double> U1;
    std::optional<double> U2;
};

enum class RegionLabel { R1, R2, R3, Q1, Q2 };

const char* to_string(RegionLabel label);

BoundConstants bound_constants(const Spectrum& s, const Tolerance& tol = {});

/// Exact feasible interval for w1 in the given class. Empty exactly when
/// the spectrum is not realizable for that class. Throws
/// ClassSpectrumMismatch for symmetric classes with conjugate-pair spectra.
Interval omega1_range(MatrixClass cls, const Spectrum& s, const Tolerance& tol = {});

/// The designated completion (w2, w3) for a feasible w1. Throws OutOfRange
/// when w1 lies outside omega1_range beyond tolerance, NegativeRadicand on
/// an internal inconsistency.
DiagonalTriple canonical_completion(MatrixClass cls, const Spectrum& s, double w1,
                                    const Tolerance& tol = {});

/// Subregion of the (lambda2, lambda3) parameter triangle deciding which of
/// L1/L2/L3 attains the max. Precondition: the spectrum lies in the
/// triangle (equivalently 2*l1 + l2 + 3*l3 >= 0); throws OutsideRegion
/// otherwise. Boundary ties resolve with precedence R1 > R3 > R2.
RegionLabel classify_region_R(const Spectrum& s, const Tolerance& tol = {});

/// Subregion deciding whether the trace or U2 is the binding upper bound
/// for the doubly stochastic range. Q1 claims the trace; the exact dividing
/// curve belongs to Q1.
RegionLabel classify_region_Q(const Spectrum& s, const Tolerance& tol = {});

/// 2x2 range for w1. SymmetricStochastic (and DoublyStochastic) degenerate
/// to the single point (l1 + l2)/2. Empty iff l1 + l2 < 0.
Interval range_pair(MatrixClass cls, const PairSpectrum& s, const Tolerance& tol = {});

}  // namespace niep3
