#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "niep3/conditions.hpp"
#include "niep3/spectra.hpp"

namespace niep3 {
namespace testutil {

inline Spectrum random_real_spectrum(std::mt19937_64& rng, double scale_lo = 0.5,
                                     double scale_hi = 2.0) {
    std::uniform_real_distribution<double> scale_dist(scale_lo, scale_hi);
    const double l1 = scale_dist(rng);
    std::uniform_real_distribution<double> tail(-l1, l1);
    double l2 = tail(rng), l3 = tail(rng);
    if (l2 < l3) std::swap(l2, l3);
    return Spectrum::real_triple(l1, l2, l3);
}

inline Spectrum random_complex_spectrum(std::mt19937_64& rng, double scale_lo = 0.5,
                                        double scale_hi = 2.0) {
    std::uniform_real_distribution<double> scale_dist(scale_lo, scale_hi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double a = scale_dist(rng);
    const double b = -a + 2.0 * a * unit(rng);
    const double c = std::max(1e-6, a * unit(rng));
    return Spectrum::complex_pair(a, b, c);
}

/// Rejection-samples a spectrum passing realizable(cls) of the requested
/// kind (conjugate-pair spectra realizable for a class satisfy the
/// corollary conditions by construction).
inline Spectrum random_realizable_spectrum(MatrixClass cls, bool complex_kind,
                                           std::mt19937_64& rng) {
    std::uniform_real_distribution<double> scale_dist(0.5, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        if (complex_kind) {
            const double a = scale_dist(rng);
            const double b = -0.5 * a + 1.5 * a * unit(rng);
            if (a - b < 1e-9) continue;
            const double c = (a - b) / std::sqrt(3.0) * unit(rng);
            if (c <= 1e-7) continue;
            return Spectrum::complex_pair(a, b, c);
        }
        const Spectrum s = random_real_spectrum(rng);
        if (realizable(cls, s).satisfied) return s;
    }
}

inline double max_root_error(const Spectrum& x, const Spectrum& y) {
    auto a = x.expand();
    auto b = y.expand();
    auto byval = [](const std::complex<double>& p, const std::complex<double>& q) {
        if (p.real() != q.real()) return p.real() > q.real();
        return p.imag() > q.imag();
    };
    std::sort(a.begin(), a.end(), byval);
    std::sort(b.begin(), b.end(), byval);
    double err = 0.0;
    for (int i = 0; i < 3; ++i)
        err = std::max(err, std::abs(a[static_cast<std::size_t>(i)] -
                                     b[static_cast<std::size_t>(i)]));
    return err;
}

constexpr MatrixClass kAllClasses[] = {
    MatrixClass::General, MatrixClass::Symmetric, MatrixClass::Stochastic,
    MatrixClass::SymmetricStochastic, MatrixClass::DoublyStochastic};

constexpr MatrixClass kComplexClasses[] = {
    MatrixClass::General, MatrixClass::Stochastic, MatrixClass::DoublyStochastic};

}  // namespace testutil
}  // namespace niep3
