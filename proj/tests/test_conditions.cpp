#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "niep3/bounds.hpp"
#include "niep3/conditions.hpp"
#include "test_util.hpp"

using namespace niep3;

namespace {

const ConditionItem& item(const ConditionReport& rep, const std::string& label) {
    for (const auto& it : rep.items)
        if (it.label == label) return it;
    throw std::runtime_error("missing condition " + label);
}

// A diagonal with the prescribed trace, sorted; spread controls how far the
// entries wander from the equal split.
DiagonalTriple random_trace_diagonal(double trace, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double third = trace / 3.0;
    const double spread = std::abs(trace) + 0.5;
    double a = third + spread * (unit(rng) - 0.5);
    double b = third + spread * (unit(rng) - 0.5);
    return canonicalize_diagonal(a, b, trace - a - b);
}

}  // namespace

TEST_CASE("general check passes the converse counterexample data") {
    // Lambda = (1, 1/2, 1/4), Omega = (4/5, 3/4, 1/5): e2 gap is
    // 91/100 - 7/8 = 7/200, positive, while the symmetric trace-sum
    // condition fails by -1/20.
    const Spectrum s = Spectrum::real_triple(1, 0.5, 0.25);
    const DiagonalTriple d = DiagonalTriple::of(0.8, 0.75, 0.2);

    const ConditionReport gen = check(MatrixClass::General, s, d);
    CHECK(gen.overall);
    CHECK(item(gen, "iv").slack == doctest::Approx(0.035).epsilon(1e-12));

    const ConditionReport sym = check(MatrixClass::Symmetric, s, d);
    CHECK(!sym.overall);
    for (const auto& it : sym.items)
        CHECK(it.satisfied == (it.label != "iii"));
    CHECK(item(sym, "iii").slack == doctest::Approx(-0.05).epsilon(1e-12));
}

TEST_CASE("symmetric stochastic check: equality condition with zero residual") {
    const Spectrum s = Spectrum::real_triple(1, 0.4, 0.1);
    const DiagonalTriple d = DiagonalTriple::of(0.6, 0.45, 0.45);
    const ConditionReport rep = check(MatrixClass::SymmetricStochastic, s, d);
    CHECK(rep.overall);
    // s = 0.2, s^2 = 0.04 = 0.4 * 0.55 - 0.18.
    CHECK(item(rep, "iii").slack == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(item(rep, "iv").slack == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("doubly stochastic check: V at zero") {
    const Spectrum s = Spectrum::real_triple(1, 0.4, 0.1);
    const DiagonalTriple d = DiagonalTriple::of(0.7, 0.4, 0.4);
    const ConditionReport rep = check(MatrixClass::DoublyStochastic, s, d);
    CHECK(rep.overall);
    CHECK(item(rep, "iv").slack == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(item(rep, "v").slack == doctest::Approx(0.0225).epsilon(1e-12));
}

TEST_CASE("complex general check: equal diagonal at a third of the trace") {
    const Spectrum s = Spectrum::complex_pair(1, 0.2, 0.3);
    const double third = 1.4 / 3.0;
    const ConditionReport rep =
        check(MatrixClass::General, s, DiagonalTriple::of(third, third, third));
    CHECK(rep.overall);
    REQUIRE(rep.items.size() == 4);
    CHECK(item(rep, "ii").description == "lambda1 >= w1");
}

TEST_CASE("complex doubly stochastic check drops the fifth condition") {
    const Spectrum s = Spectrum::complex_pair(1, 0.2, 0.3);
    const double third = 1.4 / 3.0;
    const ConditionReport rep = check(MatrixClass::DoublyStochastic, s,
                                      DiagonalTriple::of(third, third, third));
    CHECK(rep.items.size() == 4);
    CHECK(rep.overall);
}

TEST_CASE("symmetric classes reject conjugate-pair spectra") {
    const Spectrum s = Spectrum::complex_pair(1, 0.2, 0.3);
    const DiagonalTriple d = DiagonalTriple::of(0.5, 0.45, 0.45);
    for (MatrixClass cls :
         {MatrixClass::Symmetric, MatrixClass::SymmetricStochastic}) {
        try {
            check(cls, s, d);
            FAIL("expected ClassSpectrumMismatch");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::ClassSpectrumMismatch);
        }
        CHECK_THROWS_AS(realizable(cls, s), Error);
    }
}

TEST_CASE("check reports every condition even after a failure") {
    const Spectrum s = Spectrum::real_triple(1, 0.5, 0.25);
    const DiagonalTriple d = DiagonalTriple::of(2.0, 0.0, -0.25);
    const ConditionReport rep = check(MatrixClass::General, s, d);
    CHECK(!rep.overall);
    CHECK(rep.items.size() == 4);
    int failed = 0;
    for (const auto& it : rep.items) failed += it.satisfied ? 0 : 1;
    CHECK(failed >= 2);  // nonnegativity and the bracket both fail
}

TEST_CASE("realizable: frozen verdicts") {
    CHECK(realizable(MatrixClass::General, Spectrum::real_triple(1, 0.5, -0.9)).satisfied);
    CHECK(!realizable(MatrixClass::DoublyStochastic, Spectrum::real_triple(1, 0.5, -0.9))
               .satisfied);
    CHECK(realizable(MatrixClass::Stochastic, Spectrum::complex_pair(1, 0.2, 0.3))
              .satisfied);
    CHECK(realizable(MatrixClass::General, Spectrum::real_triple(1, 1, 1)).satisfied);
    // (a - b)^2 >= 3c^2 violated: 0.04 < 0.12.
    CHECK(!realizable(MatrixClass::General, Spectrum::complex_pair(1, 0.8, 0.2))
               .satisfied);
}

TEST_CASE("check_pair: frozen verdicts") {
    CHECK(check_pair(MatrixClass::General, PairSpectrum::of(1, -1),
                     PairDiagonal::of(0, 0))
              .overall);
    CHECK(check_pair(MatrixClass::SymmetricStochastic, PairSpectrum::of(1, 0.5),
                     PairDiagonal::of(0.75, 0.75))
              .overall);

    const ConditionReport bad = check_pair(MatrixClass::General, PairSpectrum::of(1, 0.5),
                                           PairDiagonal::of(1.2, 0.3));
    CHECK(!bad.overall);
    CHECK(item(bad, "iii").slack == doctest::Approx(0.36 - 0.5).epsilon(1e-12));
    CHECK(item(bad, "i").satisfied);
    CHECK(item(bad, "ii").satisfied);
}

TEST_CASE("2x2 doubly stochastic is handled as symmetric stochastic") {
    const ConditionReport a = check_pair(MatrixClass::DoublyStochastic,
                                         PairSpectrum::of(1, 0.5), PairDiagonal::of(0.75, 0.75));
    const ConditionReport b = check_pair(MatrixClass::SymmetricStochastic,
                                         PairSpectrum::of(1, 0.5), PairDiagonal::of(0.75, 0.75));
    REQUIRE(a.items.size() == b.items.size());
    for (std::size_t i = 0; i < a.items.size(); ++i) {
        CHECK(a.items[i].description == b.items[i].description);
        CHECK(a.items[i].satisfied == b.items[i].satisfied);
    }
}

TEST_CASE("implication audit: frozen cases") {
    const ImplicationAudit all_true = implication_audit(
        Spectrum::real_triple(1, 0.5, 0.25), DiagonalTriple::of(0.75, 0.5, 0.5));
    CHECK(all_true.premises_hold);
    CHECK(all_true.symmetric_iii_holds);
    CHECK(all_true.general_iv_holds);  // e2 gap = 1.0 - 0.875
    CHECK(all_true.implication_respected);

    // The converse direction fails on this input and that is fine.
    const ImplicationAudit converse = implication_audit(
        Spectrum::real_triple(1, 0.5, 0.25), DiagonalTriple::of(0.8, 0.75, 0.2));
    CHECK(!converse.symmetric_iii_holds);
    CHECK(converse.general_iv_holds);
    CHECK(converse.implication_respected);

    const ImplicationAudit ones = implication_audit(Spectrum::real_triple(1, 1, 1),
                                                    DiagonalTriple::of(1, 1, 1));
    CHECK(ones.premises_hold);
    CHECK(ones.implication_respected);
}

TEST_CASE("general and stochastic checks coincide for real spectra") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 3000; ++i) {
        const Spectrum s = testutil::random_real_spectrum(rng);
        const DiagonalTriple d =
            random_trace_diagonal(elementary_symmetrics(s).e1, rng);
        const ConditionReport g = check(MatrixClass::General, s, d);
        const ConditionReport st = check(MatrixClass::Stochastic, s, d);
        REQUIRE(g.items.size() == st.items.size());
        CHECK(g.overall == st.overall);
        for (std::size_t k = 0; k < g.items.size(); ++k) {
            CHECK(g.items[k].description == st.items[k].description);
            CHECK(g.items[k].slack == st.items[k].slack);
            CHECK(g.items[k].satisfied == st.items[k].satisfied);
        }
    }
}

TEST_CASE("class nesting holds on random pairs") {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int sds_passes = 0;
    for (int i = 0; i < 10000; ++i) {
        Spectrum s = testutil::random_real_spectrum(rng);
        DiagonalTriple d = random_trace_diagonal(elementary_symmetrics(s).e1, rng);
        // Mix in engineered feasible pairs so the strong antecedents fire.
        if (i % 3 == 0) {
            const MatrixClass cls = testutil::kAllClasses[(i / 3) % 5];
            s = testutil::random_realizable_spectrum(cls, false, rng);
            const Interval r = omega1_range(cls, s);
            if (!r.empty)
                d = canonical_completion(cls, s, r.lo + unit(rng) * r.width());
        }
        const bool gen = check(MatrixClass::General, s, d).overall;
        const bool sym = check(MatrixClass::Symmetric, s, d).overall;
        const bool sto = check(MatrixClass::Stochastic, s, d).overall;
        const bool sds = check(MatrixClass::SymmetricStochastic, s, d).overall;
        const bool dbl = check(MatrixClass::DoublyStochastic, s, d).overall;
        if (sds) {
            CHECK(dbl);
            ++sds_passes;
        }
        if (dbl) CHECK(sto);
        if (sto) CHECK(gen);
        if (sym) CHECK(gen);
    }
    CHECK(sds_passes > 100);  // the antecedent must actually fire
}

TEST_CASE("implication audit is respected on random inputs") {
    std::mt19937_64 rng(303);
    for (int i = 0; i < 10000; ++i) {
        const Spectrum s = testutil::random_real_spectrum(rng);
        const DiagonalTriple d =
            random_trace_diagonal(elementary_symmetrics(s).e1, rng);
        CHECK(implication_audit(s, d).implication_respected);
    }
}

TEST_CASE("check verdicts are homogeneous of degree one") {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> tdist(0.1, 10.0);
    int agreed = 0;
    for (int i = 0; i < 4000; ++i) {
        const Spectrum s = testutil::random_real_spectrum(rng);
        const DiagonalTriple d =
            random_trace_diagonal(elementary_symmetrics(s).e1, rng);
        const MatrixClass cls = testutil::kAllClasses[i % 5];
        const ConditionReport base = check(cls, s, d);
        const double t = tdist(rng);
        const Spectrum ts = Spectrum::real_triple(t * s.l1(), t * s.l2(), t * s.l3());
        const DiagonalTriple td =
            DiagonalTriple::of(t * d.w1(), t * d.w2(), t * d.w3());
        const ConditionReport scaled = check(cls, ts, td);
        if (scaled.overall == base.overall) {
            ++agreed;
        } else {
            // A flip is legitimate only when some slack sits inside the
            // tolerance flip window.
            bool near_boundary = false;
            for (const auto& it : base.items)
                if (std::abs(it.slack) >= 1e-13 && std::abs(it.slack) <= 1e-6)
                    near_boundary = true;
            CHECK(near_boundary);
        }
    }
    CHECK(agreed > 3900);
}

TEST_CASE("realizable matches nonemptiness of the closed-form range") {
    std::mt19937_64 rng(505);
    for (int i = 0; i < 4000; ++i) {
        const bool complex_kind = i % 4 == 3;
        const Spectrum s = complex_kind ? testutil::random_complex_spectrum(rng)
                                        : testutil::random_real_spectrum(rng);
        for (MatrixClass cls : testutil::kAllClasses) {
            if (complex_kind && (cls == MatrixClass::Symmetric ||
                                 cls == MatrixClass::SymmetricStochastic))
                continue;
            CHECK(realizable(cls, s).satisfied == !omega1_range(cls, s).empty);
        }
    }
}
