#include "niep3/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "niep3/conditions.hpp"

namespace niep3 {

namespace {

const double kSqrt3 = std::sqrt(3.0);

// Clamps a radicand that is provably nonnegative in exact arithmetic but may
// land slightly below zero in floating point. Values below -abs_tol raise
// NegativeRadicand.
double clamp_radicand(double r, double abs_tol) {
    if (r >= 0.0) return r;
    if (r >= -abs_tol) return 0.0;
    throw Error(Errc::NegativeRadicand, "radicand unexpectedly negative");
}

std::optional<double> sqrt_if_defined(double radicand, double abs_tol) {
    if (radicand < -abs_tol) return std::nullopt;
    return std::sqrt(std::max(0.0, radicand));
}

double max_defined(const BoundConstants& bc) {
    double m = bc.L1;
    if (bc.L2) m = std::max(m, *bc.L2);
    if (bc.L3) m = std::max(m, *bc.L3);
    return m;
}

}  // namespace

const char* to_string(RegionLabel label) {
    switch (label) {
        case RegionLabel::R1: return "R1";
        case RegionLabel::R2: return "R2";
        case RegionLabel::R3: return "R3";
        case RegionLabel::Q1: return "Q1";
        case RegionLabel::Q2: return "Q2";
    }
    return "?";
}

BoundConstants bound_constants(const Spectrum& s, const Tolerance& tol) {
    BoundConstants bc;
    const double t2 = tol.at(s.scale(), 2);

    if (s.is_real()) {
        const double l1 = s.l1(), l2 = s.l2(), l3 = s.l3();
        bc.L1 = (2.0 * l1 + 3.0 * l2 + l3) / 6.0;
        if (auto r = sqrt_if_defined(-(l1 + 2.0 * l2) * (l1 + 2.0 * l3), t2))
            bc.L2 = 0.5 * (l1 + l2 + l3) + *r / (2.0 * kSqrt3);
        if (auto r = sqrt_if_defined(
                -(2.0 * l1 + l2 - 3.0 * l3) * (2.0 * l1 - 3.0 * l2 + l3), t2))
            bc.L3 = 0.25 * (2.0 * l1 + l2 + l3) + *r / (4.0 * kSqrt3);
        const double u2_rad =
            4.0 * (l1 - l2) * (l1 - l3) + 3.0 * (l2 - l3) * (l2 - l3);
        bc.U2 = 0.5 * (l2 + l3) + std::sqrt(clamp_radicand(u2_rad, t2)) / (2.0 * kSqrt3);
    } else {
        const double a = s.a(), b = s.b(), c = s.c();
        bc.L1 = (a + 2.0 * b) / 3.0;
        if (auto r = sqrt_if_defined((a - b) * (a - b) - 3.0 * c * c, t2))
            bc.U1 = (a + 2.0 * b) / 3.0 + 2.0 / 3.0 * *r;
        if (auto r = sqrt_if_defined((a - b) * (a - b) - 2.0 * c * c, t2))
            bc.U2 = b + *r / kSqrt3;
    }
    return bc;
}

Interval omega1_range(MatrixClass cls, const Spectrum& s, const Tolerance& tol) {
    // The closed-form endpoints are exact only on realizable spectra; off
    // that set the raw formulas can still produce a nonempty interval (the
    // symmetric stochastic pair is the offender), so gate explicitly.
    if (!realizable(cls, s, tol).satisfied) return Interval::none();

    const BoundConstants bc = bound_constants(s, tol);
    const Esym e = elementary_symmetrics(s);
    double lo, hi;

    if (s.is_real()) {
        switch (cls) {
            case MatrixClass::General:
            case MatrixClass::Symmetric:
            case MatrixClass::Stochastic:
                lo = std::max(e.e1 / 3.0, s.l2());
                hi = std::min(e.e1, s.l1());
                break;
            case MatrixClass::SymmetricStochastic:
                lo = max_defined(bc);
                hi = (s.l1() + 2.0 * s.l2()) / 3.0;
                break;
            case MatrixClass::DoublyStochastic:
                lo = max_defined(bc);
                hi = std::min(e.e1, bc.U2.value());
                break;
            default:
                return Interval::none();
        }
    } else {
        switch (cls) {
            case MatrixClass::General:
            case MatrixClass::Stochastic:
                if (!bc.U1) return Interval::none();
                lo = e.e1 / 3.0;
                hi = std::min(e.e1, *bc.U1);
                break;
            case MatrixClass::DoublyStochastic:
                if (!bc.U2) return Interval::none();
                lo = e.e1 / 3.0;
                hi = std::min(e.e1, *bc.U2);
                break;
            case MatrixClass::Symmetric:
            case MatrixClass::SymmetricStochastic:
            default:
                throw Error(Errc::ClassSpectrumMismatch,
                            "no range for symmetric classes with conjugate-pair spectra");
        }
    }

    if (lo > hi) {
        // Realizability guarantees lo <= hi in exact arithmetic; collapse
        // rounding-level inversions onto a point.
        if (lo - hi <= tol.at(s.scale(), 1)) {
            const double m = 0.5 * (lo + hi);
            return Interval::of(m, m);
        }
        return Interval::none();
    }
    return Interval::of(lo, hi);
}

DiagonalTriple canonical_completion(MatrixClass cls, const Spectrum& s, double w1,
                                    const Tolerance& tol) {
    const Interval range = omega1_range(cls, s, tol);
    const double t1 = tol.at(s.scale(), 1);
    if (!range.contains(w1, t1))
        throw Error(Errc::OutOfRange, "w1 outside the feasible range");

    const Esym e = elementary_symmetrics(s);
    const double half_rest = 0.5 * (e.e1 - w1);

    const bool split = s.is_real() &&
                       (cls == MatrixClass::SymmetricStochastic ||
                        (cls == MatrixClass::DoublyStochastic &&
                         w1 <= (s.l1() + 2.0 * s.l2()) / 3.0));
    double w2 = half_rest, w3 = half_rest;
    if (split) {
        const double rad = -(3.0 * w1 - s.l1() - 2.0 * s.l2()) *
                           (3.0 * w1 - s.l1() - 2.0 * s.l3());
        const double off = std::sqrt(clamp_radicand(rad, tol.at(s.scale(), 2))) /
                           (2.0 * kSqrt3);
        w2 = half_rest + off;
        w3 = half_rest - off;
    }
    // w1 >= w2 >= w3 holds on the feasible range; absorb rounding noise at
    // the endpoints (at lo the equal split can exceed w1 by one ulp).
    if (w2 > w1 && w2 - w1 <= t1) w2 = w1;
    if (w3 > w2 && w3 - w2 <= t1) w3 = w2;
    return DiagonalTriple::of(w1, w2, w3);
}

RegionLabel classify_region_R(const Spectrum& s, const Tolerance& tol) {
    if (!s.is_real())
        throw Error(Errc::ClassSpectrumMismatch, "region labels need a real spectrum");
    const double l1 = s.l1(), l2 = s.l2(), l3 = s.l3();
    const double t1 = tol.at(s.scale(), 1);
    if (2.0 * l1 + l2 + 3.0 * l3 < -t1)
        throw Error(Errc::OutsideRegion, "spectrum outside the parameter triangle");

    // Precedence R1 > R3 > R2; the subregions overlap only on boundaries,
    // where the dominating constants tie.
    if (l3 >= std::max(-0.5 * l1, -2.0 * l1 + 3.0 * l2) - t1) return RegionLabel::R1;
    if (l2 >= 0.5 * l1 - t1 && l3 >= -l2 - t1 && l3 <= -2.0 * l1 + 3.0 * l2 + t1)
        return RegionLabel::R3;
    return RegionLabel::R2;
}

RegionLabel classify_region_Q(const Spectrum& s, const Tolerance& tol) {
    if (!s.is_real())
        throw Error(Errc::ClassSpectrumMismatch, "region labels need a real spectrum");
    const double l1 = s.l1(), l2 = s.l2(), l3 = s.l3();
    const double t1 = tol.at(s.scale(), 1);
    if (2.0 * l1 + l2 + 3.0 * l3 < -t1)
        throw Error(Errc::OutsideRegion, "spectrum outside the parameter triangle");

    // Dividing curve l1^2 + 2 l1 l2 + 2 l1 l3 + l2 l3 = 0, evaluated as a
    // quadratic form so the degenerate denominator 2 l1 + l2 = 0 needs no
    // special case. The curve itself belongs to Q1.
    const double form = l1 * l1 + 2.0 * l1 * l2 + 2.0 * l1 * l3 + l2 * l3;
    return form <= 0.0 ? RegionLabel::Q1 : RegionLabel::Q2;
}

Interval range_pair(MatrixClass cls, const PairSpectrum& s, const Tolerance&) {
    const double sum = s.l1 + s.l2;
    if (sum < 0.0) return Interval::none();
    if (cls == MatrixClass::SymmetricStochastic || cls == MatrixClass::DoublyStochastic)
        return Interval::of(0.5 * sum, 0.5 * sum);
    return Interval::of(0.5 * sum, std::min(sum, s.l1));
}

}  // namespace niep3
