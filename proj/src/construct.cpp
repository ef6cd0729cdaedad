#include "niep3/construct.hpp"

#include <cmath>

namespace niep3 {

namespace {

double clamp_radicand(double r, double abs_tol) {
    if (r >= 0.0) return r;
    if (r >= -abs_tol) return 0.0;
    throw Error(Errc::NegativeRadicand, "radicand unexpectedly negative");
}

// Entries are polynomials of degree up to three in the eigenvalue scale.
double entry_tol(const Spectrum& s, const Tolerance& tol) {
    return tol.at(s.scale(), 3);
}

// Clamps rounding-level negatives on the off-diagonal; the diagonal carries
// the prescribed entries verbatim.
void clamp_entries(Matrix3& m, double abs_tol) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            double& v = m(i, j);
            if (v < 0.0) {
                if (v < -abs_tol)
                    throw Error(Errc::NegativeEntry,
                                "construction produced a negative entry");
                v = 0.0;
            }
        }
}

// (w1 - l2)(w1 - l3) in real arithmetic; (w1 - b)^2 + c^2 for a pair.
double shifted_pair_product(const Spectrum& s, double w1) {
    if (s.is_real()) return (w1 - s.l2()) * (w1 - s.l3());
    const double d = w1 - s.b();
    return d * d + s.c() * s.c();
}

double gap_product(const Spectrum& s) {
    if (s.is_real()) return (s.l1() - s.l2()) * (s.l1() - s.l3());
    const double d = s.a() - s.b();
    return d * d + s.c() * s.c();
}

double trailing_mean(const Spectrum& s) {
    return s.is_real() ? 0.5 * (s.l2() + s.l3()) : s.b();
}

}  // namespace

ConstructionResult construct(MatrixClass cls, const Spectrum& s, const DiagonalTriple& d,
                             const Tolerance& tol) {
    ConditionReport pre = check(cls, s, d, tol);
    if (!pre.overall) throw InfeasibleError(std::move(pre));

    const Esym el = elementary_symmetrics(s);
    const Esym ew = elementary_symmetrics(d);
    const double lam1 = s.perron();
    const double w1 = d.w1(), w2 = d.w2(), w3 = d.w3();
    const double t1 = tol.at(s.scale(), 1);
    const double t2 = tol.at(s.scale(), 2);

    ConstructionResult res;
    res.cls = cls;
    Matrix3& m = res.matrix;

    switch (cls) {
        case MatrixClass::General: {
            // Companion-style form: subdiagonal ones carry the coupling and
            // the two free entries absorb the characteristic-polynomial gap.
            const double corner = s.is_real()
                                      ? (s.l1() - w1) * (s.l2() - w1) * (s.l3() - w1)
                                      : (s.a() - w1) * shifted_pair_product(s, w1);
            const double e2_gap = ew.e2 - el.e2;
            m(0, 0) = w1;   m(0, 1) = 0.0;  m(0, 2) = corner;
            m(1, 0) = 1.0;  m(1, 1) = w2;   m(1, 2) = e2_gap;
            m(2, 0) = 0.0;  m(2, 1) = 1.0;  m(2, 2) = w3;
            res.auxiliaries = {{"e2_gap", e2_gap}};
            break;
        }
        case MatrixClass::Stochastic: {
            const double denom = lam1 - w3;
            double p, lower;
            if (denom > t1) {
                p = (ew.e2 - el.e2) / denom;
                // Factored form of lam1 - w2 - p: a product of nonnegative
                // terms, immune to cancellation near the boundary.
                lower = shifted_pair_product(s, w1) / denom;
            } else {
                p = 0.0;
                lower = lam1 - w2;
            }
            m(0, 0) = w1;     m(0, 1) = 0.0;        m(0, 2) = lam1 - w1;
            m(1, 0) = lower;  m(1, 1) = w2;         m(1, 2) = p;
            m(2, 0) = 0.0;    m(2, 1) = lam1 - w3;  m(2, 2) = w3;
            res.auxiliaries = {{"p", p}};
            break;
        }
        case MatrixClass::Symmetric: {
            const double alpha = s.l1() + s.l2() - w1 - w2;
            const double beta = s.l1() + s.l2() - w1 - w3;
            const double gamma = (s.l1() - w1) * (w1 - s.l2());
            double m12 = 0.0, m13 = 0.0, m23 = 0.0;
            if (alpha + beta > t1) {
                m12 = std::sqrt(clamp_radicand(beta * gamma / (alpha + beta), t2));
                m13 = std::sqrt(clamp_radicand(alpha * gamma / (alpha + beta), t2));
                m23 = std::sqrt(clamp_radicand(alpha * beta, t2));
            }
            // alpha + beta = 0 forces l2 = l3, w1 = l1 and gamma = 0; the
            // limit matrix is diagonal.
            m(0, 0) = w1;   m(0, 1) = m12;  m(0, 2) = m13;
            m(1, 0) = m12;  m(1, 1) = w2;   m(1, 2) = m23;
            m(2, 0) = m13;  m(2, 1) = m23;  m(2, 2) = w3;
            res.auxiliaries = {{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}};
            break;
        }
        case MatrixClass::SymmetricStochastic: {
            const double mu = trailing_mean(s);
            m(0, 0) = w1;       m(0, 1) = w3 - mu;  m(0, 2) = w2 - mu;
            m(1, 0) = w3 - mu;  m(1, 1) = w2;       m(1, 2) = w1 - mu;
            m(2, 0) = w2 - mu;  m(2, 1) = w1 - mu;  m(2, 2) = w3;
            res.auxiliaries = {{"m", mu}, {"s", w3 - mu}};
            break;
        }
        case MatrixClass::DoublyStochastic: {
            const double mu = trailing_mean(s);
            const double sv = w3 - mu;
            const double V = (lam1 - w1) * (lam1 - w2) - gap_product(s) / 3.0;
            const double W = sv * sv - V;
            const double sq = std::sqrt(clamp_radicand(W, t2));
            m(0, 0) = w1;            m(0, 1) = w3 - mu + sq;  m(0, 2) = w2 - mu - sq;
            m(1, 0) = w3 - mu - sq;  m(1, 1) = w2;            m(1, 2) = w1 - mu + sq;
            m(2, 0) = w2 - mu + sq;  m(2, 1) = w1 - mu - sq;  m(2, 2) = w3;
            res.auxiliaries = {{"m", mu},      {"V", V},
                               {"W", W},       {"s", sv + sq},
                               {"t", sv - sq}, {"sqrtW", sq}};
            break;
        }
    }

    clamp_entries(m, entry_tol(s, tol));
    return res;
}

Matrix2 construct_pair(MatrixClass cls, const PairSpectrum& s, const PairDiagonal& d,
                       const Tolerance& tol) {
    ConditionReport pre = check_pair(cls, s, d, tol);
    if (!pre.overall) throw InfeasibleError(std::move(pre));

    const double scale = std::max(1.0, std::abs(s.l1));
    const double t2 = tol.rel * scale * scale;

    switch (cls) {
        case MatrixClass::General:
            return {{{{d.w1, d.w1 * d.w2 - s.l1 * s.l2}, {1.0, d.w2}}}};
        case MatrixClass::Symmetric: {
            const double g = std::sqrt(clamp_radicand(d.w1 * d.w2 - s.l1 * s.l2, t2));
            return {{{{d.w1, g}, {g, d.w2}}}};
        }
        case MatrixClass::Stochastic:
            return {{{{d.w1, s.l1 - d.w1}, {s.l1 - d.w2, d.w2}}}};
        case MatrixClass::SymmetricStochastic:
        case MatrixClass::DoublyStochastic: {
            const double half_sum = 0.5 * (s.l1 + s.l2);
            const double half_diff = 0.5 * (s.l1 - s.l2);
            return {{{{half_sum, half_diff}, {half_diff, half_sum}}}};
        }
    }
    return {};
}

Matrix3 normalize_unit(const ConstructionResult& m, const Spectrum& s,
                       const Tolerance& tol) {
    if (m.cls != MatrixClass::Stochastic && m.cls != MatrixClass::SymmetricStochastic &&
        m.cls != MatrixClass::DoublyStochastic)
        throw Error(Errc::ClassSpectrumMismatch,
                    "normalization applies to stochastic-family classes");
    const double lam1 = s.perron();
    if (lam1 <= tol.rel)
        throw Error(Errc::NonPositiveScale, "Perron root must be positive to normalize");
    Matrix3 out = m.matrix;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out(i, j) /= lam1;
    return out;
}

}  // namespace niep3
