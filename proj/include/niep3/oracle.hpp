#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "niep3/bounds.hpp"
#include "niep3/spectra.hpp"

namespace niep3 {
namespace oracle {

struct ScanConfig {
    int grid_n = 200;
    std::uint64_t seed = 0;
    int trials = 10000;
};

struct NecessityResult {
    // Counterexamples in trial order: (trial index, offending matrix). The
    // theorems predict this stays empty.
    std::vector<std::pair<int, Matrix3>> failures;
    int trials = 0;
};

struct ScanResult {
    bool feasible = false;
    std::optional<DiagonalTriple> witness;
};

struct RangeAuditResult {
    Interval empirical;
    Interval formula;
    double max_endpoint_gap = 0.0;
};

/// Samples a random member of the class at the given scale. General draws
/// i.i.d. uniform entries; Symmetric symmetrizes one; Stochastic draws each
/// row uniformly from the simplex; DoublyStochastic draws a Dirichlet(1)
/// convex combination of the six permutation matrices; SymmetricStochastic
/// symmetrizes a doubly stochastic draw. Deterministic for a fixed seed.
Matrix3 random_matrix(MatrixClass cls, double scale, std::uint64_t seed);

/// The "only if" stress test: sample matrices of the class, extract
/// spectrum and diagonal, and run the feasibility check on each. Any
/// failing sample is a counterexample to the necessity direction. Trials
/// draw independent RNG streams from (seed, trial index), so results are
/// deterministic and reduction order independent. This entry point runs the
/// trials in parallel; see serial:: for the reference loop.
NecessityResult necessity_trial(MatrixClass cls, const ScanConfig& cfg);

/// Grid-scans candidate diagonals for a fixed w1, eliminating one variable
/// through the trace equality. Returns the first passing candidate in grid
/// order. For SymmetricStochastic the scan injects the canonical completion
/// as a final candidate and loosens the equality tolerance to 1e-6*scale^2,
/// since exact equalities have measure zero on a grid.
ScanResult omega_scan(MatrixClass cls, const Spectrum& s, double w1,
                      const ScanConfig& cfg);

/// Bisects the empirical feasibility boundary of omega_scan over
/// [0, trace] to 1e-4*scale resolution and compares it with the closed-form
/// interval. Throws EmptyRange when the spectrum is not realizable.
RangeAuditResult range_audit(MatrixClass cls, const Spectrum& s, const ScanConfig& cfg);

namespace serial {

NecessityResult necessity_trial(MatrixClass cls, const ScanConfig& cfg);
ScanResult omega_scan(MatrixClass cls, const Spectrum& s, double w1,
                      const ScanConfig& cfg);
RangeAuditResult range_audit(MatrixClass cls, const Spectrum& s, const ScanConfig& cfg);

}  // namespace serial

/// Mixes a base seed with a trial index into an independent stream seed.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace oracle
}  // namespace niep3
