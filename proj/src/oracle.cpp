#include "niep3/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "niep3/conditions.hpp"
#include "niep3/eigensolve.hpp"

namespace niep3 {
namespace oracle {

namespace {

// Eigenvalue extraction carries closed-form solver noise, so the necessity
// checks run at a looser tolerance than the conditions-module default.
constexpr double kExtractionRel = 1e-7;

// Equality conditions have measure zero on a grid; the scan accepts them
// at this relative tolerance.
constexpr double kScanEqualityRel = 1e-6;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::array<double, 3> dirichlet3(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(std::numeric_limits<double>::min(), 1.0);
    std::array<double, 3> g{-std::log(unit(rng)), -std::log(unit(rng)),
                            -std::log(unit(rng))};
    const double sum = g[0] + g[1] + g[2];
    return {g[0] / sum, g[1] / sum, g[2] / sum};
}

const std::array<std::array<int, 3>, 6> kPerms = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

Matrix3 symmetrize(const Matrix3& m) {
    Matrix3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out(i, j) = 0.5 * (m(i, j) + m(j, i));
    return out;
}

Matrix3 birkhoff_sample(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> unit(std::numeric_limits<double>::min(), 1.0);
    std::array<double, 6> g;
    double sum = 0.0;
    for (auto& v : g) {
        v = -std::log(unit(rng));
        sum += v;
    }
    Matrix3 m;
    for (int p = 0; p < 6; ++p) {
        const double w = g[static_cast<std::size_t>(p)] / sum * scale;
        for (int i = 0; i < 3; ++i) m(i, kPerms[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)]) += w;
    }
    return m;
}

bool trial_fails(MatrixClass cls, const Matrix3& m) {
    const CubicCoefficients cp = char_poly(m);
    const Tolerance tol{kExtractionRel};
    try {
        const Spectrum s = solve_cubic(cp, tol);
        const auto diag = m.diagonal();
        const DiagonalTriple d = canonicalize_diagonal(diag[0], diag[1], diag[2]);
        return !check(cls, s, d, tol).overall;
    } catch (const Error&) {
        // A symmetric sample reporting a conjugate pair (or any other
        // canonical-form failure) is itself a counterexample.
        return true;
    }
}

struct ScanCandidates {
    double lo = 0.0, step = 0.0;
    int grid = 0;                     // number of grid points
    std::optional<double> injected;   // extra candidate after the grid

    int total() const { return grid + (injected ? 1 : 0); }
    double at(int idx) const {
        if (idx < grid) return lo + step * idx;
        return *injected;
    }
};

ScanCandidates scan_candidates(MatrixClass cls, const Spectrum& s, double w1,
                               const ScanConfig& cfg, const Tolerance& tol) {
    if (cfg.grid_n < 2) throw std::invalid_argument("grid_n must be at least 2");
    if (!s.is_real() &&
        (cls == MatrixClass::Symmetric || cls == MatrixClass::SymmetricStochastic))
        throw Error(Errc::ClassSpectrumMismatch,
                    "no scan for symmetric classes with conjugate-pair spectra");
    ScanCandidates cand;
    const Esym e = elementary_symmetrics(s);
    const double lo = std::max(0.0, 0.5 * (e.e1 - w1));
    const double hi = std::min(w1, e.e1 - w1);
    if (hi >= lo) {
        cand.lo = lo;
        cand.grid = cfg.grid_n;
        cand.step = (hi - lo) / (cfg.grid_n - 1);
    }
    if (cls == MatrixClass::SymmetricStochastic) {
        try {
            cand.injected = canonical_completion(cls, s, w1, tol).w2();
        } catch (const Error&) {
            // w1 outside the closed-form range: no completion to inject.
        }
    }
    return cand;
}

bool scan_candidate_passes(MatrixClass cls, const Spectrum& s, double w1, double w2,
                           const Tolerance& tol) {
    const Esym e = elementary_symmetrics(s);
    const double w3 = e.e1 - w1 - w2;
    try {
        return check(cls, s, DiagonalTriple::of(w1, std::min(w2, w1), w3), tol).overall;
    } catch (const Error&) {
        return false;
    }
}

Tolerance scan_tolerance(MatrixClass cls) {
    return cls == MatrixClass::SymmetricStochastic ? Tolerance{kScanEqualityRel}
                                                   : Tolerance{};
}

ScanResult scan_result_from_index(const Spectrum& s, double w1,
                                  const ScanCandidates& cand, int idx) {
    if (idx < 0) return {};
    const Esym e = elementary_symmetrics(s);
    const double w2 = std::min(cand.at(idx), w1);
    return {true, DiagonalTriple::of(w1, w2, e.e1 - w1 - w2)};
}

template <typename ScanFn>
RangeAuditResult range_audit_impl(MatrixClass cls, const Spectrum& s,
                                  const ScanConfig& cfg, ScanFn&& feasible_at) {
    if (!realizable(cls, s).satisfied)
        throw Error(Errc::EmptyRange, "spectrum is not realizable for this class");

    const Interval formula = omega1_range(cls, s);
    const Esym e = elementary_symmetrics(s);
    const double hi_cap = std::max(0.0, e.e1);
    const double resolution = 1e-4 * std::max(1.0, std::abs(s.perron()));

    // Seed candidates: a coarse sweep plus the closed-form landmarks (a
    // degenerate interval would slip between coarse points otherwise).
    std::vector<double> seeds;
    const int coarse = std::max(cfg.grid_n, 64);
    for (int i = 0; i <= coarse; ++i) seeds.push_back(hi_cap * i / coarse);
    if (!formula.empty) {
        seeds.push_back(formula.lo);
        seeds.push_back(formula.mid());
        seeds.push_back(formula.hi);
    }

    double found = std::numeric_limits<double>::quiet_NaN();
    for (double w : seeds)
        if (feasible_at(w)) {
            found = w;
            break;
        }

    RangeAuditResult out;
    out.formula = formula;
    if (!std::isfinite(found)) {
        out.empirical = Interval::none();
        out.max_endpoint_gap = formula.empty ? 0.0 : formula.width();
        return out;
    }

    double lo = found;
    if (feasible_at(0.0)) {
        lo = 0.0;
    } else {
        double bad = 0.0;
        while (lo - bad > resolution) {
            const double mid = 0.5 * (lo + bad);
            (feasible_at(mid) ? lo : bad) = mid;
        }
    }
    double hi = found;
    if (feasible_at(hi_cap)) {
        hi = hi_cap;
    } else {
        double bad = hi_cap;
        while (bad - hi > resolution) {
            const double mid = 0.5 * (hi + bad);
            (feasible_at(mid) ? hi : bad) = mid;
        }
    }
    out.empirical = Interval::of(lo, hi);
    out.max_endpoint_gap = formula.empty
                               ? out.empirical.width()
                               : std::max(std::abs(lo - formula.lo),
                                          std::abs(hi - formula.hi));
    return out;
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index));
}

Matrix3 random_matrix(MatrixClass cls, double scale, std::uint64_t seed) {
    if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    switch (cls) {
        case MatrixClass::General: {
            Matrix3 m;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m(i, j) = scale * unit(rng);
            return m;
        }
        case MatrixClass::Symmetric: {
            Matrix3 m;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m(i, j) = scale * unit(rng);
            return symmetrize(m);
        }
        case MatrixClass::Stochastic: {
            Matrix3 m;
            for (int i = 0; i < 3; ++i) {
                const auto row = dirichlet3(rng);
                for (int j = 0; j < 3; ++j) m(i, j) = scale * row[static_cast<std::size_t>(j)];
            }
            return m;
        }
        case MatrixClass::DoublyStochastic:
            return birkhoff_sample(rng, scale);
        case MatrixClass::SymmetricStochastic:
            return symmetrize(birkhoff_sample(rng, scale));
    }
    return {};
}

namespace serial {

NecessityResult necessity_trial(MatrixClass cls, const ScanConfig& cfg) {
    NecessityResult out;
    out.trials = cfg.trials;
    for (int i = 0; i < cfg.trials; ++i) {
        const Matrix3 m = random_matrix(cls, 1.0, stream_seed(cfg.seed, static_cast<std::uint64_t>(i)));
        if (trial_fails(cls, m)) out.failures.emplace_back(i, m);
    }
    return out;
}

ScanResult omega_scan(MatrixClass cls, const Spectrum& s, double w1,
                      const ScanConfig& cfg) {
    const Tolerance tol = scan_tolerance(cls);
    const ScanCandidates cand = scan_candidates(cls, s, w1, cfg, tol);
    for (int i = 0; i < cand.total(); ++i)
        if (scan_candidate_passes(cls, s, w1, cand.at(i), tol))
            return scan_result_from_index(s, w1, cand, i);
    return {};
}

RangeAuditResult range_audit(MatrixClass cls, const Spectrum& s, const ScanConfig& cfg) {
    return range_audit_impl(cls, s, cfg, [&](double w1) {
        return serial::omega_scan(cls, s, w1, cfg).feasible;
    });
}

}  // namespace serial

NecessityResult necessity_trial(MatrixClass cls, const ScanConfig& cfg) {
    NecessityResult out;
    out.trials = cfg.trials;
    std::vector<std::vector<std::pair<int, Matrix3>>> local(
        static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < cfg.trials; ++i) {
        const Matrix3 m =
            random_matrix(cls, 1.0, stream_seed(cfg.seed, static_cast<std::uint64_t>(i)));
        if (trial_fails(cls, m))
            local[static_cast<std::size_t>(omp_get_thread_num())].emplace_back(i, m);
    }
    for (auto& chunk : local)
        out.failures.insert(out.failures.end(), chunk.begin(), chunk.end());
    // Reduce deterministically regardless of the thread schedule.
    std::sort(out.failures.begin(), out.failures.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

ScanResult omega_scan(MatrixClass cls, const Spectrum& s, double w1,
                      const ScanConfig& cfg) {
    const Tolerance tol = scan_tolerance(cls);
    const ScanCandidates cand = scan_candidates(cls, s, w1, cfg, tol);
    const int n = cand.total();
    int best = n;
#pragma omp parallel for schedule(static) reduction(min : best)
    for (int i = 0; i < n; ++i) {
        if (scan_candidate_passes(cls, s, w1, cand.at(i), tol))
            best = std::min(best, i);
    }
    if (best >= n) return {};
    return scan_result_from_index(s, w1, cand, best);
}

RangeAuditResult range_audit(MatrixClass cls, const Spectrum& s, const ScanConfig& cfg) {
    return range_audit_impl(cls, s, cfg, [&](double w1) {
        return oracle::omega_scan(cls, s, w1, cfg).feasible;
    });
}

}  // namespace oracle
}  // namespace niep3
