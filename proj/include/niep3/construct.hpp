#pragma once

#include <array>
#include <map>
#include <string>

#include "niep3/conditions.hpp"
#include "niep3/spectra.hpp"

namespace niep3 {

struct ConstructionResult {
    Matrix3 matrix;
    MatrixClass cls;
    // Intermediate constants actually used by the construction (p, alpha,
    // beta, gamma, m, s, t, V, W, ...), keyed by name.
    std::map<std::string, double> auxiliaries;
};

/// Raised when the feasibility precondition fails; carries the full report
/// so callers can name every violated condition.
class InfeasibleError : public Error {
public:
    InfeasibleError(ConditionReport report)
        : Error(Errc::InfeasibleInput, "input fails the feasibility conditions"),
          report_(std::move(report)) {}
    const ConditionReport& report() const { return report_; }

private:
    ConditionReport report_;
};

struct Matrix2 {
    std::array<std::array<double, 2>, 2> e;
    double operator()(int i, int j) const {
        return e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    double trace() const { return e[0][0] + e[1][1]; }
    double det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }
};

/// Builds the explicit realizing matrix for a feasible (class, spectrum,
/// diagonal). The diagonal is assigned, never recomputed; symmetric classes
/// get symmetric entries by assignment. Entries in [-tol*scale, 0) are
/// clamped to zero; anything lower raises NegativeEntry.
ConstructionResult construct(MatrixClass cls, const Spectrum& s, const DiagonalTriple& d,
                             const Tolerance& tol = {});

/// The 2x2 realizing matrix. DoublyStochastic is served by the
/// SymmetricStochastic construction.
Matrix2 construct_pair(MatrixClass cls, const PairSpectrum& s, const PairDiagonal& d,
                       const Tolerance& tol = {});

/// Rescales a stochastic-family construction so the Perron root becomes 1
/// (row sums become 1, and column sums for doubly stochastic).
Matrix3 normalize_unit(const ConstructionResult& m, const Spectrum& s,
                       const Tolerance& tol = {});

}  // namespace niep3
