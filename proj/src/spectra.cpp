#include "niep3/spectra.hpp"

#include <algorithm>
#include <cmath>

namespace niep3 {

namespace {

bool all_finite(double a, double b, double c) {
    return std::isfinite(a) && std::isfinite(b) && std::isfinite(c);
}

}  // namespace

const char* to_string(MatrixClass cls) {
    switch (cls) {
        case MatrixClass::General: return "general";
        case MatrixClass::Symmetric: return "symmetric";
        case MatrixClass::Stochastic: return "stochastic";
        case MatrixClass::SymmetricStochastic: return "symmetric-stochastic";
        case MatrixClass::DoublyStochastic: return "doubly-stochastic";
    }
    return "?";
}

double Tolerance::at(double scale, int degree) const {
    double s = std::max(1.0, std::abs(scale));
    double f = 1.0;
    for (int i = 0; i < degree; ++i) f *= s;
    return rel * f;
}

Spectrum Spectrum::real_triple(double l1, double l2, double l3) {
    if (!all_finite(l1, l2, l3))
        throw Error(Errc::NonFinite, "spectrum entries must be finite");
    if (l1 < l2 || l2 < l3)
        throw Error(Errc::OutOfRange, "real triple must satisfy l1 >= l2 >= l3");
    return Spectrum(Kind::RealTriple, l1, l2, l3);
}

Spectrum Spectrum::complex_pair(double a, double b, double c) {
    if (!all_finite(a, b, c))
        throw Error(Errc::NonFinite, "spectrum entries must be finite");
    if (!(c > 0.0))
        throw Error(Errc::OutOfRange, "conjugate pair requires c > 0");
    return Spectrum(Kind::ComplexPair, a, b, c);
}

double Spectrum::scale() const {
    return std::max(1.0, std::abs(x0_));
}

std::array<std::complex<double>, 3> Spectrum::expand() const {
    if (kind_ == Kind::RealTriple)
        return {std::complex<double>(x0_), std::complex<double>(x1_), std::complex<double>(x2_)};
    return {std::complex<double>(x0_), {x1_, x2_}, {x1_, -x2_}};
}

DiagonalTriple DiagonalTriple::of(double w1, double w2, double w3) {
    if (!all_finite(w1, w2, w3))
        throw Error(Errc::NonFinite, "diagonal entries must be finite");
    if (w1 < w2 || w2 < w3)
        throw Error(Errc::OutOfRange, "diagonal triple must satisfy w1 >= w2 >= w3");
    return DiagonalTriple(w1, w2, w3);
}

PairSpectrum PairSpectrum::of(double l1, double l2) {
    if (!std::isfinite(l1) || !std::isfinite(l2))
        throw Error(Errc::NonFinite, "pair spectrum must be finite");
    if (l1 < l2) throw Error(Errc::OutOfRange, "pair spectrum must satisfy l1 >= l2");
    return PairSpectrum{l1, l2};
}

PairDiagonal PairDiagonal::of(double w1, double w2) {
    if (!std::isfinite(w1) || !std::isfinite(w2))
        throw Error(Errc::NonFinite, "pair diagonal must be finite");
    if (w1 < w2) throw Error(Errc::OutOfRange, "pair diagonal must satisfy w1 >= w2");
    return PairDiagonal{w1, w2};
}

Matrix3 Matrix3::from_rows(const std::array<std::array<double, 3>, 3>& rows) {
    Matrix3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (!std::isfinite(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]))
                throw Error(Errc::NonFinite, "matrix entries must be finite");
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    return m;
}

double Matrix3::trace() const { return e_[0] + e_[4] + e_[8]; }

double Matrix3::row_sum(int i) const {
    return (*this)(i, 0) + (*this)(i, 1) + (*this)(i, 2);
}

double Matrix3::col_sum(int j) const {
    return (*this)(0, j) + (*this)(1, j) + (*this)(2, j);
}

std::array<double, 3> Matrix3::diagonal() const { return {e_[0], e_[4], e_[8]}; }

double Matrix3::min_entry() const {
    return *std::min_element(e_.begin(), e_.end());
}

Spectrum canonicalize_spectrum(const std::array<std::complex<double>, 3>& raw,
                               const Tolerance& tol) {
    for (const auto& z : raw)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw Error(Errc::NonFinite, "spectrum entries must be finite");

    const double mag = std::max({std::abs(raw[0]), std::abs(raw[1]), std::abs(raw[2])});
    const double im_tol = tol.at(mag, 1);

    int n_real = 0;
    for (const auto& z : raw)
        if (std::abs(z.imag()) <= im_tol) ++n_real;

    if (n_real == 3) {
        std::array<double, 3> v{raw[0].real(), raw[1].real(), raw[2].real()};
        std::sort(v.begin(), v.end(), std::greater<>());
        return Spectrum::real_triple(v[0], v[1], v[2]);
    }

    // Exactly one real value plus a conjugate pair. Try each choice of the
    // real element and match the remaining two.
    for (int r = 0; r < 3; ++r) {
        const auto& zr = raw[static_cast<std::size_t>(r)];
        if (std::abs(zr.imag()) > im_tol) continue;
        const auto& zp = raw[static_cast<std::size_t>((r + 1) % 3)];
        const auto& zq = raw[static_cast<std::size_t>((r + 2) % 3)];
        if (std::abs(zp.real() - zq.real()) > im_tol) continue;
        if (std::abs(zp.imag() + zq.imag()) > im_tol) continue;
        const double a = zr.real();
        const double b = 0.5 * (zp.real() + zq.real());
        const double c = 0.5 * (std::abs(zp.imag()) + std::abs(zq.imag()));
        if (c <= im_tol) {
            std::array<double, 3> v{a, b, b};
            std::sort(v.begin(), v.end(), std::greater<>());
            return Spectrum::real_triple(v[0], v[1], v[2]);
        }
        return Spectrum::complex_pair(a, b, c);
    }
    throw Error(Errc::NotConjugateClosed,
                "eigenvalue list is not closed under complex conjugation");
}

DiagonalTriple canonicalize_diagonal(double r1, double r2, double r3) {
    if (!all_finite(r1, r2, r3))
        throw Error(Errc::NonFinite, "diagonal entries must be finite");
    std::array<double, 3> v{r1, r2, r3};
    std::sort(v.begin(), v.end(), std::greater<>());
    return DiagonalTriple::of(v[0], v[1], v[2]);
}

Esym elementary_symmetrics(const Spectrum& s) {
    if (s.is_real()) {
        const double l1 = s.l1(), l2 = s.l2(), l3 = s.l3();
        return {l1 + l2 + l3, l1 * l2 + l1 * l3 + l2 * l3, l1 * l2 * l3};
    }
    return elementary_symmetrics_abc(s.a(), s.b(), s.c());
}

Esym elementary_symmetrics(const DiagonalTriple& d) {
    const double w1 = d.w1(), w2 = d.w2(), w3 = d.w3();
    return {w1 + w2 + w3, w1 * w2 + w1 * w3 + w2 * w3, w1 * w2 * w3};
}

Esym elementary_symmetrics_abc(double a, double b, double c) {
    const double pair_prod = b * b + c * c;
    return {a + 2.0 * b, 2.0 * a * b + pair_prod, a * pair_prod};
}

}  // namespace niep3
