#pragma once

#include <optional>
#include <vector>

#include "niep3/spectra.hpp"

namespace niep3 {

/// Coefficients of the monic characteristic polynomial
/// x^3 - c2 x^2 + c1 x - c0, so c2/c1/c0 are the elementary symmetric
/// functions of the roots.
struct CubicCoefficients {
    double c2, c1, c0;
};

struct CubicSolveDetail {
    Spectrum spectrum;
    double max_polish_step;  // largest Newton correction applied to a root
    double max_residual;     // max |p(root)| / max(1,|c2|)^3 after polish
};

struct VerificationReport {
    double eigen_residual;
    bool diagonal_match;
    bool spectrum_match;
    std::vector<MatrixClass> classes_satisfied;
    double row_sum_deviation;
    double col_sum_deviation;
    double symmetry_deviation;
    double min_entry;
    Spectrum computed;
};

/// c2 = trace, c1 = sum of the three principal 2x2 minors, c0 = determinant.
CubicCoefficients char_poly(const Matrix3& m);

/// Closed-form roots of the monic cubic. Three real roots go through the
/// trigonometric branch (acos argument clamped), the conjugate-pair case
/// through Cardano; near-zero discriminants yield a repeated real root so
/// real constructions never report spurious pairs. Each root gets one
/// Newton polish step, and the result is canonicalized.
Spectrum solve_cubic(const CubicCoefficients& c, const Tolerance& tol = {});
CubicSolveDetail solve_cubic_detailed(const CubicCoefficients& c, const Tolerance& tol = {});

/// Computes the spectrum of m, compares against optional claims, and
/// classifies the matrix: nonnegative, symmetric, equal row sums, equal
/// column sums, and their combinations. Deviations are max-norm values
/// scaled by max(1, |Perron estimate|).
VerificationReport verify(const Matrix3& m, const std::optional<Spectrum>& claimed,
                          const std::optional<DiagonalTriple>& claimed_diag,
                          const Tolerance& tol = {});

struct PowerSumEntry {
    int k;
    double value;
    bool nonneg;
};

struct JllEntry {
    int k, m;
    double slack;  // 3^(k-1) * s_{km} - s_m^k
    bool holds;
};

struct PowerSumDiagnostics {
    std::vector<PowerSumEntry> power_sums;
    std::vector<JllEntry> jll;
};

/// Power sums s_k for k = 1..kmax via the Newton recurrence (real
/// arithmetic for both spectrum kinds) plus every JLL inequality
/// 3^(k-1) s_{km} >= s_m^k with km <= kmax. kmax is capped at 12; beyond
/// that floating-point growth dominates.
PowerSumDiagnostics power_sum_diagnostics(const Spectrum& s, int kmax,
                                          const Tolerance& tol = {});

}  // namespace niep3
