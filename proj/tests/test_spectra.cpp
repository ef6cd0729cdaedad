#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "niep3/eigensolve.hpp"
#include "niep3/oracle.hpp"
#include "niep3/spectra.hpp"
#include "test_util.hpp"

using namespace niep3;

namespace {
std::complex<double> cx(double re, double im = 0.0) { return {re, im}; }
}  // namespace

TEST_CASE("canonicalize_spectrum sorts real triples") {
    const Spectrum a = canonicalize_spectrum({cx(1), cx(0.5), cx(0.25)});
    CHECK(a.is_real());
    CHECK(a.l1() == 1.0);
    CHECK(a.l2() == 0.5);
    CHECK(a.l3() == 0.25);

    const Spectrum b = canonicalize_spectrum({cx(0.25), cx(1), cx(0.5)});
    CHECK(b == a);
}

TEST_CASE("canonicalize_spectrum recognizes conjugate pairs") {
    const Spectrum s = canonicalize_spectrum({cx(1), cx(0.2, 0.3), cx(0.2, -0.3)});
    CHECK(!s.is_real());
    CHECK(s.a() == 1.0);
    CHECK(s.b() == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(s.c() == doctest::Approx(0.3).epsilon(1e-15));

    // Pair listed first, real value last.
    const Spectrum t = canonicalize_spectrum({cx(0.2, 0.3), cx(0.2, -0.3), cx(1)});
    CHECK(t == s);
}

TEST_CASE("canonicalize_spectrum rejects non-conjugate-closed lists") {
    try {
        canonicalize_spectrum({cx(1), cx(0.2, 0.3), cx(0.5, -0.3)});
        FAIL("expected NotConjugateClosed");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotConjugateClosed);
    }
}

TEST_CASE("canonicalize_spectrum rejects non-finite input") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(canonicalize_spectrum({cx(nan), cx(0), cx(0)}), Error);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(canonicalize_spectrum({cx(1), cx(0, inf), cx(0, -inf)}), Error);
}

TEST_CASE("conjugate pair with c below tolerance collapses to a real triple") {
    const Spectrum s = canonicalize_spectrum({cx(1), cx(0.5, 1e-12), cx(0.5, -1e-12)});
    CHECK(s.is_real());
    CHECK(s.l2() == 0.5);
    CHECK(s.l3() == 0.5);
}

TEST_CASE("canonicalize_spectrum is idempotent on expansion") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 500; ++i) {
        const Spectrum s = (i % 2 == 0) ? testutil::random_real_spectrum(rng)
                                        : testutil::random_complex_spectrum(rng);
        const Spectrum again = canonicalize_spectrum(s.expand());
        CHECK(again == s);
    }
}

TEST_CASE("canonicalize_diagonal sorts nonincreasing") {
    const DiagonalTriple d = canonicalize_diagonal(0.2, 0.8, 0.75);
    CHECK(d.w1() == 0.8);
    CHECK(d.w2() == 0.75);
    CHECK(d.w3() == 0.2);

    const DiagonalTriple ones = canonicalize_diagonal(1, 1, 1);
    CHECK(ones == DiagonalTriple::of(1, 1, 1));

    // Negative values are representable; feasibility is checked elsewhere.
    const DiagonalTriple neg = canonicalize_diagonal(0, -1, 0);
    CHECK(neg.w1() == 0.0);
    CHECK(neg.w2() == 0.0);
    CHECK(neg.w3() == -1.0);

    CHECK_THROWS_AS(canonicalize_diagonal(std::nan(""), 0, 0), Error);
}

TEST_CASE("type invariants are enforced at construction") {
    CHECK_THROWS_AS(Spectrum::real_triple(0.5, 1.0, 0.25), Error);
    CHECK_THROWS_AS(Spectrum::complex_pair(1.0, 0.2, 0.0), Error);
    CHECK_THROWS_AS(Spectrum::complex_pair(1.0, 0.2, -0.3), Error);
    CHECK_THROWS_AS(DiagonalTriple::of(0.5, 1.0, 0.25), Error);
    CHECK_THROWS_AS(PairSpectrum::of(0.5, 1.0), Error);
    CHECK_THROWS_AS(
        Matrix3::from_rows({{{1, 0, 0}, {0, std::nan(""), 0}, {0, 0, 1}}}), Error);
}

TEST_CASE("elementary symmetric functions: frozen values") {
    // Cross-checked by expanding (x-1)(x-1/2)(x-1/4).
    const Esym e = elementary_symmetrics(Spectrum::real_triple(1, 0.5, 0.25));
    CHECK(e.e1 == doctest::Approx(1.75).epsilon(1e-15));
    CHECK(e.e2 == doctest::Approx(0.875).epsilon(1e-15));
    CHECK(e.e3 == doctest::Approx(0.125).epsilon(1e-15));

    // 2ab + b^2 + c^2 = 0.4 + 0.04 + 0.09; a(b^2 + c^2) = 0.13.
    const Esym ec = elementary_symmetrics(Spectrum::complex_pair(1, 0.2, 0.3));
    CHECK(ec.e1 == doctest::Approx(1.4).epsilon(1e-15));
    CHECK(ec.e2 == doctest::Approx(0.53).epsilon(1e-15));
    CHECK(ec.e3 == doctest::Approx(0.13).epsilon(1e-15));

    const Esym et = elementary_symmetrics(Spectrum::real_triple(1, 1, 1));
    CHECK(et.e1 == 3.0);
    CHECK(et.e2 == 3.0);
    CHECK(et.e3 == 1.0);
}

TEST_CASE("pair formulas at c = 0 coincide with the real-triple values") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double a = dist(rng), b = dist(rng);
        const Esym via_pair = elementary_symmetrics_abc(a, b, 0.0);
        const Spectrum real = canonicalize_spectrum({cx(a), cx(b), cx(b)});
        const Esym via_real = elementary_symmetrics(real);
        CHECK(via_pair.e1 == doctest::Approx(via_real.e1).epsilon(1e-12));
        CHECK(via_pair.e2 == doctest::Approx(via_real.e2).epsilon(1e-12));
        CHECK(via_pair.e3 == doctest::Approx(via_real.e3).epsilon(1e-12));
    }
}

TEST_CASE("pair spectra always produce real finite symmetric functions") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const Esym e = elementary_symmetrics(testutil::random_complex_spectrum(rng));
        CHECK(std::isfinite(e.e1));
        CHECK(std::isfinite(e.e2));
        CHECK(std::isfinite(e.e3));
    }
}

TEST_CASE("matrix symmetric functions match trace, minor sum and determinant") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 300; ++i) {
        const MatrixClass cls = testutil::kAllClasses[i % 5];
        const Matrix3 m = oracle::random_matrix(cls, 1.0, rng());
        const CubicCoefficients cp = char_poly(m);
        const Esym e = elementary_symmetrics(solve_cubic(cp));
        CHECK(e.e1 == doctest::Approx(cp.c2).epsilon(1e-9));
        CHECK(e.e2 == doctest::Approx(cp.c1).epsilon(1e-9));
        CHECK(e.e3 == doctest::Approx(cp.c0).epsilon(1e-9));
    }
}

TEST_CASE("Matrix3 helpers") {
    const Matrix3 m = Matrix3::from_rows({{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}});
    CHECK(m.trace() == 15.0);
    CHECK(m.row_sum(1) == 15.0);
    CHECK(m.col_sum(2) == 18.0);
    CHECK(m.diagonal() == std::array<double, 3>{1, 5, 9});
    CHECK(m.min_entry() == 1.0);
}
