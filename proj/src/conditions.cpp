#include "niep3/conditions.hpp"

#include <algorithm>
#include <cmath>

namespace niep3 {

namespace {

constexpr const char* kCiteFiedler = "Fiedler (1974)";
constexpr const char* kCitePerfect = "Perfect (1955)";
constexpr const char* kCitePerfectMirsky = "Perfect & Mirsky (1965)";
constexpr const char* kCiteLoewyLondon = "Loewy & London (1978)";
constexpr const char* kCiteSoto = "Soto, Salas & Manzaneda (2010)";
constexpr const char* kCiteGeneral = "general 3x3 feasibility criterion";
constexpr const char* kCiteSymStoch = "symmetric stochastic feasibility criterion";
constexpr const char* kCiteDoublyStoch = "doubly stochastic feasibility criterion";

ConditionItem ineq(std::string label, std::string description, double slack,
                   double abs_tol, std::string citation) {
    return {std::move(label), std::move(description), slack, slack >= -abs_tol,
            false, std::move(citation)};
}

ConditionItem equality(std::string label, std::string description, double residual,
                       double abs_tol, std::string citation) {
    const double r = std::abs(residual);
    return {std::move(label), std::move(description), -r, r <= abs_tol,
            true, std::move(citation)};
}

bool conjunction(const std::vector<ConditionItem>& items) {
    return std::all_of(items.begin(), items.end(),
                       [](const ConditionItem& it) { return it.satisfied; });
}

void require_real_spectrum(MatrixClass cls, const Spectrum& s) {
    if (!s.is_real() &&
        (cls == MatrixClass::Symmetric || cls == MatrixClass::SymmetricStochastic))
        throw Error(Errc::ClassSpectrumMismatch,
                    std::string(to_string(cls)) +
                        " has no feasibility criterion for conjugate-pair spectra");
}

// Pair product (l1 - l2)(l1 - l3) evaluated in real arithmetic for both
// spectrum kinds; equals (a - b)^2 + c^2 for a conjugate pair.
double gap_product(const Spectrum& s) {
    if (s.is_real()) return (s.l1() - s.l2()) * (s.l1() - s.l3());
    const double d = s.a() - s.b();
    return d * d + s.c() * s.c();
}

// Half-sum of the two trailing eigenvalues; equals b for a conjugate pair.
double trailing_mean(const Spectrum& s) {
    return s.is_real() ? 0.5 * (s.l2() + s.l3()) : s.b();
}

}  // namespace

ConditionReport check(MatrixClass cls, const Spectrum& s, const DiagonalTriple& d,
                      const Tolerance& tol) {
    require_real_spectrum(cls, s);

    const double scale = s.scale();
    const double t1 = tol.at(scale, 1);
    const double t2 = tol.at(scale, 2);
    const Esym el = elementary_symmetrics(s);
    const Esym ew = elementary_symmetrics(d);
    const double lam1 = s.perron();
    const double w1 = d.w1(), w2 = d.w2(), w3 = d.w3();

    ConditionReport rep{cls, {}, false};

    switch (cls) {
        case MatrixClass::General:
        case MatrixClass::Stochastic: {
            const char* cite = (cls == MatrixClass::Stochastic)
                                   ? (s.is_real() ? kCitePerfect : kCiteSoto)
                                   : kCiteGeneral;
            rep.items.push_back(ineq("i", "w3 >= 0", w3, t1, cite));
            if (s.is_real()) {
                rep.items.push_back(ineq("ii", "lambda1 >= w1 >= lambda2",
                                         std::min(lam1 - w1, w1 - s.l2()), t1, cite));
            } else {
                rep.items.push_back(ineq("ii", "lambda1 >= w1", lam1 - w1, t1, cite));
            }
            rep.items.push_back(equality("iii", "e1(W) = e1(L)", ew.e1 - el.e1, t1, cite));
            rep.items.push_back(ineq("iv", "e2(W) >= e2(L)", ew.e2 - el.e2, t2, cite));
            break;
        }
        case MatrixClass::Symmetric: {
            rep.items.push_back(ineq("i", "w3 >= 0", w3, t1, kCiteFiedler));
            rep.items.push_back(ineq("ii", "lambda1 >= w1 >= lambda2",
                                     std::min(lam1 - w1, w1 - s.l2()), t1, kCiteFiedler));
            rep.items.push_back(ineq("iii", "lambda1 + lambda2 >= w1 + w2",
                                     s.l1() + s.l2() - w1 - w2, t1, kCiteFiedler));
            rep.items.push_back(equality("iv", "e1(W) = e1(L)", ew.e1 - el.e1, t1,
                                         kCiteFiedler));
            break;
        }
        case MatrixClass::SymmetricStochastic: {
            const double sv = w3 - 0.5 * (s.l2() + s.l3());
            const double rhs = (lam1 - w1) * (lam1 - w2) - gap_product(s) / 3.0;
            rep.items.push_back(ineq("i", "w3 >= 0", w3, t1, kCiteSymStoch));
            rep.items.push_back(equality("ii", "e1(W) = e1(L)", ew.e1 - el.e1, t1,
                                         kCiteSymStoch));
            rep.items.push_back(ineq("iii", "w3 - (lambda2 + lambda3)/2 >= 0", sv, t1,
                                     kCiteSymStoch));
            rep.items.push_back(equality(
                "iv",
                "(w3 - (lambda2 + lambda3)/2)^2 = "
                "(lambda1 - w1)(lambda1 - w2) - (lambda1 - lambda2)(lambda1 - lambda3)/3",
                sv * sv - rhs, t2, kCiteSymStoch));
            break;
        }
        case MatrixClass::DoublyStochastic: {
            const double sv = w3 - trailing_mean(s);
            const double V = (lam1 - w1) * (lam1 - w2) - gap_product(s) / 3.0;
            rep.items.push_back(ineq("i", "w3 >= 0", w3, t1, kCiteDoublyStoch));
            rep.items.push_back(equality("ii", "e1(W) = e1(L)", ew.e1 - el.e1, t1,
                                         kCiteDoublyStoch));
            rep.items.push_back(ineq("iii", "w3 - (lambda2 + lambda3)/2 >= 0", sv, t1,
                                     kCiteDoublyStoch));
            rep.items.push_back(ineq(
                "iv",
                "(lambda1 - w1)(lambda1 - w2) - (lambda1 - lambda2)(lambda1 - lambda3)/3 >= 0",
                V, t2, kCiteDoublyStoch));
            if (s.is_real()) {
                // The conjugate-pair case drops this condition: there it holds
                // automatically.
                rep.items.push_back(ineq("v", "(w3 - (lambda2 + lambda3)/2)^2 >= "
                                              "(lambda1 - w1)(lambda1 - w2) - "
                                              "(lambda1 - lambda2)(lambda1 - lambda3)/3",
                                         sv * sv - V, t2, kCiteDoublyStoch));
            }
            break;
        }
    }
    rep.overall = conjunction(rep.items);
    return rep;
}

RealizabilityReport realizable(MatrixClass cls, const Spectrum& s, const Tolerance& tol) {
    require_real_spectrum(cls, s);

    const double scale = s.scale();
    const double t1 = tol.at(scale, 1);
    const double t2 = tol.at(scale, 2);

    RealizabilityReport rep{cls, {}, false};

    if (s.is_real()) {
        const double l1 = s.l1(), l2 = s.l2(), l3 = s.l3();
        if (cls == MatrixClass::SymmetricStochastic || cls == MatrixClass::DoublyStochastic) {
            rep.items.push_back(ineq("i", "2*lambda1 + lambda2 + 3*lambda3 >= 0",
                                     2.0 * l1 + l2 + 3.0 * l3, t1, kCitePerfectMirsky));
        } else {
            const char* cite = (cls == MatrixClass::Stochastic) ? kCitePerfect
                                                                : kCiteLoewyLondon;
            rep.items.push_back(ineq("i", "lambda1 + lambda3 >= 0", l1 + l3, t1, cite));
            rep.items.push_back(ineq("ii", "lambda1 + lambda2 + lambda3 >= 0",
                                     l1 + l2 + l3, t1, cite));
        }
    } else {
        const double a = s.a(), b = s.b(), c = s.c();
        const char* cite = (cls == MatrixClass::Stochastic) ? kCiteSoto
                           : (cls == MatrixClass::DoublyStochastic) ? kCitePerfectMirsky
                                                                    : kCiteLoewyLondon;
        rep.items.push_back(ineq("i", "a >= 0", a, t1, cite));
        rep.items.push_back(ineq("ii", "-a/2 <= b <= a",
                                 std::min(b + 0.5 * a, a - b), t1, cite));
        rep.items.push_back(ineq("iii", "(a - b)^2 >= 3c^2",
                                 (a - b) * (a - b) - 3.0 * c * c, t2, cite));
    }
    rep.satisfied = conjunction(rep.items);
    return rep;
}

ConditionReport check_pair(MatrixClass cls, const PairSpectrum& s, const PairDiagonal& d,
                           const Tolerance& tol) {
    const double scale = std::max(1.0, std::abs(s.l1));
    const double t1 = tol.rel * scale;
    const double t2 = tol.rel * scale * scale;

    ConditionReport rep{cls, {}, false};
    const bool forced_equal = (cls == MatrixClass::SymmetricStochastic ||
                               cls == MatrixClass::DoublyStochastic);
    const char* cite = forced_equal ? kCitePerfectMirsky : "2x2 feasibility criterion";

    rep.items.push_back(ineq("i", "w2 >= 0", d.w2, t1, cite));
    rep.items.push_back(equality("ii", "w1 + w2 = lambda1 + lambda2",
                                 d.w1 + d.w2 - s.l1 - s.l2, t1, cite));
    if (forced_equal) {
        rep.items.push_back(equality("iii", "w1 = w2", d.w1 - d.w2, t1, cite));
    } else {
        rep.items.push_back(ineq("iii", "w1*w2 >= lambda1*lambda2",
                                 d.w1 * d.w2 - s.l1 * s.l2, t2, cite));
    }
    rep.overall = conjunction(rep.items);
    return rep;
}

ImplicationAudit implication_audit(const Spectrum& s, const DiagonalTriple& d,
                                   const Tolerance& tol) {
    if (!s.is_real())
        throw Error(Errc::ClassSpectrumMismatch,
                    "implication audit is defined for real spectra only");

    const double scale = s.scale();
    const double t1 = tol.at(scale, 1);
    const double t2 = tol.at(scale, 2);
    const Esym el = elementary_symmetrics(s);
    const Esym ew = elementary_symmetrics(d);

    ImplicationAudit audit{};
    audit.premises_hold = (s.l1() - d.w1() >= -t1) && (d.w1() - s.l2() >= -t1) &&
                          (std::abs(ew.e1 - el.e1) <= t1);
    audit.symmetric_iii_holds = (s.l1() + s.l2() - d.w1() - d.w2() >= -t1);
    audit.general_iv_holds = (ew.e2 - el.e2 >= -t2);
    audit.implication_respected =
        !(audit.premises_hold && audit.symmetric_iii_holds && !audit.general_iv_holds);
    return audit;
}

}  // namespace niep3
