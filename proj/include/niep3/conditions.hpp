#pragma once

#include <string>
#include <vector>

#include "niep3/spectra.hpp"

namespace niep3 {

struct ConditionItem {
    std::string label;        // "i", "ii", ...
    std::string description;  // the condition formula in plain text
    double slack;             // >= 0 means satisfied; equalities report -|residual|
    bool satisfied;
    bool is_equality;
    std::string citation;
};

struct ConditionReport {
    MatrixClass cls;
    std::vector<ConditionItem> items;
    bool overall;
};

struct RealizabilityReport {
    MatrixClass cls;
    std::vector<ConditionItem> items;
    bool satisfied;
};

struct ImplicationAudit {
    bool premises_hold;
    bool symmetric_iii_holds;
    bool general_iv_holds;
    bool implication_respected;
};

/// Evaluates the full necessary-and-sufficient condition set for the given
/// class and spectrum kind. Every condition is reported, even after a
/// failure. Throws ClassSpectrumMismatch for Symmetric or
/// SymmetricStochastic with a conjugate-pair spectrum.
ConditionReport check(MatrixClass cls, const Spectrum& s, const DiagonalTriple& d,
                      const Tolerance& tol = {});

/// Eigenvalue-only realizability for the given class (no diagonal
/// prescribed). Same class/spectrum restrictions as check().
RealizabilityReport realizable(MatrixClass cls, const Spectrum& s,
                               const Tolerance& tol = {});

/// 2x2 feasibility. DoublyStochastic is handled as SymmetricStochastic:
/// the 2x2 construction is symmetric doubly stochastic.
ConditionReport check_pair(MatrixClass cls, const PairSpectrum& s, const PairDiagonal& d,
                           const Tolerance& tol = {});

/// Audits the one-way implication between the symmetric trace-sum condition
/// and the general pairwise-product condition: under the premises
/// l1 >= w1 >= l2 and equal traces, the former implies the latter.
/// implication_respected is false only on a counterexample to that claim.
ImplicationAudit implication_audit(const Spectrum& s, const DiagonalTriple& d,
                                   const Tolerance& tol = {});

}  // namespace niep3
