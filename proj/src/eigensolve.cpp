#include "niep3/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace niep3 {

namespace {

constexpr double kPi = 3.14159265358979323846;

double poly_scale(const CubicCoefficients& c) {
    return std::max(1.0, std::abs(c.c2));
}

std::complex<double> eval_poly(const CubicCoefficients& c, std::complex<double> x) {
    return ((x - c.c2) * x + c.c1) * x - c.c0;
}

std::complex<double> eval_deriv(const CubicCoefficients& c, std::complex<double> x) {
    return (3.0 * x - 2.0 * c.c2) * x + c.c1;
}

// One Newton step; skipped near critical points where it would blow up.
std::complex<double> polish(const CubicCoefficients& c, std::complex<double> x,
                            double scale, double* step_out) {
    const std::complex<double> f = eval_poly(c, x);
    const std::complex<double> fp = eval_deriv(c, x);
    if (std::abs(fp) <= 1e-12 * scale * scale) return x;
    const std::complex<double> step = f / fp;
    if (std::abs(step) > 0.1 * scale) return x;
    if (step_out) *step_out = std::max(*step_out, std::abs(step));
    return x - step;
}

}  // namespace

CubicCoefficients char_poly(const Matrix3& m) {
    const double c2 = m.trace();
    const double c1 = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) +
                      (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) +
                      (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1));
    const double c0 = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                      m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                      m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    return {c2, c1, c0};
}

CubicSolveDetail solve_cubic_detailed(const CubicCoefficients& c, const Tolerance& tol) {
    // Standard form x^3 + A x^2 + B x + C.
    const double A = -c.c2, B = c.c1, C = -c.c0;
    const double scale = poly_scale(c);

    const double Q = (A * A - 3.0 * B) / 9.0;
    const double R = (2.0 * A * A * A - 9.0 * A * B + 27.0 * C) / 54.0;
    const double disc = R * R - Q * Q * Q;

    double s6 = 1.0;
    for (int i = 0; i < 6; ++i) s6 *= scale;
    const double disc_tol = tol.rel * s6;

    std::array<std::complex<double>, 3> roots;
    double max_step = 0.0;

    if (disc > disc_tol) {
        // One real root plus a conjugate pair.
        const double mag = std::cbrt(std::abs(R) + std::sqrt(disc));
        const double a3 = (R >= 0.0) ? -mag : mag;
        const double b3 = (a3 != 0.0) ? Q / a3 : 0.0;
        const double real_root = a3 + b3 - A / 3.0;
        const double re = -0.5 * (a3 + b3) - A / 3.0;
        const double im = 0.5 * std::sqrt(3.0) * std::abs(a3 - b3);
        roots = {std::complex<double>(real_root), {re, im}, {re, -im}};
    } else if (Q > tol.rel * scale * scale) {
        // Three real roots (distinct, or repeated when disc ~ 0); the
        // clamped acos lands repeated roots exactly on theta = 0 or pi.
        const double arg = std::clamp(R / std::sqrt(Q * Q * Q), -1.0, 1.0);
        const double theta = std::acos(arg);
        const double f = -2.0 * std::sqrt(Q);
        roots = {std::complex<double>(f * std::cos(theta / 3.0) - A / 3.0),
                 std::complex<double>(f * std::cos((theta + 2.0 * kPi) / 3.0) - A / 3.0),
                 std::complex<double>(f * std::cos((theta - 2.0 * kPi) / 3.0) - A / 3.0)};
    } else {
        // Q ~ 0 and disc ~ 0: a triple root.
        const double r = -A / 3.0;
        roots = {std::complex<double>(r), std::complex<double>(r),
                 std::complex<double>(r)};
    }

    double max_residual = 0.0;
    for (auto& r : roots) {
        r = polish(c, r, scale, &max_step);
        max_residual = std::max(max_residual, std::abs(eval_poly(c, r)));
    }
    max_residual /= scale * scale * scale;

    // Polishing can leave conjugate mates slightly asymmetric; the
    // canonicalizer re-symmetrizes them.
    return {canonicalize_spectrum(roots, tol), max_step,
            max_residual};
}

Spectrum solve_cubic(const CubicCoefficients& c, const Tolerance& tol) {
    return solve_cubic_detailed(c, tol).spectrum;
}

VerificationReport verify(const Matrix3& m, const std::optional<Spectrum>& claimed,
                          const std::optional<DiagonalTriple>& claimed_diag,
                          const Tolerance& tol) {
    const CubicCoefficients cp = char_poly(m);
    const Spectrum computed = solve_cubic(cp, tol);

    const double lam1 = std::max({std::abs(computed.perron()),
                                  computed.is_real() ? std::abs(computed.l3())
                                                     : std::hypot(computed.b(), computed.c())});
    const double scale = std::max(1.0, lam1);
    const double s3 = scale * scale * scale;

    // Residual of the monic characteristic polynomial at the claimed roots
    // (or the computed ones when no claim is given).
    const Spectrum& res_at = claimed ? *claimed : computed;
    double residual = 0.0;
    for (const auto& z : res_at.expand())
        residual = std::max(residual, std::abs(eval_poly(cp, z)));
    residual /= s3;

    // Root recovery bottoms out around 1e-8 for clustered spectra; claims
    // are matched no tighter than that.
    const double match_tol = std::max(tol.rel, 1e-8) * scale;

    bool spectrum_match = true;
    if (claimed) {
        auto a = claimed->expand();
        auto b = computed.expand();
        auto byval = [](const std::complex<double>& x, const std::complex<double>& y) {
            if (x.real() != y.real()) return x.real() > y.real();
            return x.imag() > y.imag();
        };
        std::sort(a.begin(), a.end(), byval);
        std::sort(b.begin(), b.end(), byval);
        for (int i = 0; i < 3; ++i)
            if (std::abs(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]) >
                match_tol)
                spectrum_match = false;
    }

    bool diagonal_match = true;
    if (claimed_diag) {
        const auto diag = m.diagonal();
        const DiagonalTriple sorted = canonicalize_diagonal(diag[0], diag[1], diag[2]);
        diagonal_match = std::abs(sorted.w1() - claimed_diag->w1()) <= match_tol &&
                         std::abs(sorted.w2() - claimed_diag->w2()) <= match_tol &&
                         std::abs(sorted.w3() - claimed_diag->w3()) <= match_tol;
    }

    // Sum deviations are measured against the mean sum, so the certificate
    // does not inherit eigensolver noise; for a nonnegative matrix with
    // equal row sums that common value is the Perron root.
    double row_dev = 0.0, col_dev = 0.0, sym_dev = 0.0;
    const double row_mean = (m.row_sum(0) + m.row_sum(1) + m.row_sum(2)) / 3.0;
    const double col_mean = (m.col_sum(0) + m.col_sum(1) + m.col_sum(2)) / 3.0;
    for (int i = 0; i < 3; ++i) {
        row_dev = std::max(row_dev, std::abs(m.row_sum(i) - row_mean));
        col_dev = std::max(col_dev, std::abs(m.col_sum(i) - col_mean));
        for (int j = i + 1; j < 3; ++j)
            sym_dev = std::max(sym_dev, std::abs(m(i, j) - m(j, i)));
    }
    row_dev /= scale;
    col_dev /= scale;
    sym_dev /= scale;
    const double min_entry = m.min_entry();

    const double class_tol = tol.rel;
    const bool nonneg = min_entry >= -tol.rel * scale;
    const bool sym = nonneg && sym_dev <= class_tol;
    const bool stoch = nonneg && row_dev <= class_tol;
    const bool doubly = stoch && col_dev <= class_tol;

    std::vector<MatrixClass> classes;
    if (nonneg) classes.push_back(MatrixClass::General);
    if (sym) classes.push_back(MatrixClass::Symmetric);
    if (stoch) classes.push_back(MatrixClass::Stochastic);
    if (sym && stoch) classes.push_back(MatrixClass::SymmetricStochastic);
    if (doubly) classes.push_back(MatrixClass::DoublyStochastic);

    return {residual,  diagonal_match, spectrum_match, std::move(classes),
            row_dev,   col_dev,        sym_dev,        min_entry,
            computed};
}

PowerSumDiagnostics power_sum_diagnostics(const Spectrum& s, int kmax,
                                          const Tolerance& tol) {
    if (kmax < 1 || kmax > 12)
        throw std::invalid_argument("kmax must be in [1, 12]");

    const Esym e = elementary_symmetrics(s);
    const double scale = s.scale();

    // Newton's identities: s1 = e1, s2 = e1 s1 - 2 e2, and from k = 3 on
    // s_k = e1 s_{k-1} - e2 s_{k-2} + e3 s_{k-3} with s0 = 3.
    std::vector<double> ps(static_cast<std::size_t>(kmax) + 1, 0.0);
    ps[0] = 3.0;
    ps[1] = e.e1;
    if (kmax >= 2) ps[2] = e.e1 * ps[1] - 2.0 * e.e2;
    for (int k = 3; k <= kmax; ++k)
        ps[static_cast<std::size_t>(k)] = e.e1 * ps[static_cast<std::size_t>(k - 1)] -
                                          e.e2 * ps[static_cast<std::size_t>(k - 2)] +
                                          e.e3 * ps[static_cast<std::size_t>(k - 3)];

    PowerSumDiagnostics out;
    double sk_tol = tol.rel;
    for (int k = 1; k <= kmax; ++k) {
        sk_tol *= scale;
        out.power_sums.push_back({k, ps[static_cast<std::size_t>(k)],
                                  ps[static_cast<std::size_t>(k)] >= -sk_tol * 3.0});
    }
    for (int k = 2; k <= kmax; ++k) {
        for (int mm = 1; k * mm <= kmax; ++mm) {
            double pow3 = 1.0;
            for (int i = 1; i < k; ++i) pow3 *= 3.0;
            double sm_k = 1.0;
            for (int i = 0; i < k; ++i) sm_k *= ps[static_cast<std::size_t>(mm)];
            const double slack = pow3 * ps[static_cast<std::size_t>(k * mm)] - sm_k;
            const double jll_tol = tol.at(scale, k * mm) * pow3 * 3.0;
            out.jll.push_back({k, mm, slack, slack >= -jll_tol});
        }
    }
    return out;
}

}  // namespace niep3
