#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace niep3 {

/// The five matrix classes handled by the solver. "Stochastic" means a
/// positive scalar multiple of a row-stochastic matrix: every row sums to
/// the Perron root, and for DoublyStochastic every column does too.
enum class MatrixClass {
    General,
    Symmetric,
    Stochastic,
    SymmetricStochastic,
    DoublyStochastic,
};

const char* to_string(MatrixClass cls);

enum class Errc {
    NonFinite,
    NotConjugateClosed,
    ClassSpectrumMismatch,
    OutOfRange,
    NegativeRadicand,
    InfeasibleInput,
    NegativeEntry,
    NonPositiveScale,
    OutsideRegion,
    EmptyRange,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what_arg)
        : std::runtime_error(what_arg), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Relative tolerance with degree-aware absolute floors. An expression of
/// polynomial degree d in the eigenvalues is compared against
/// rel * max(1, scale)^d, where scale is the Perron magnitude.
struct Tolerance {
    double rel = 1e-9;

    double at(double scale, int degree = 1) const;
};

/// Canonical eigenvalue triple. Either three sorted reals l1 >= l2 >= l3,
/// or a real value a together with a conjugate pair b +- ci, c > 0.
class Spectrum {
public:
    enum class Kind { RealTriple, ComplexPair };

    static Spectrum real_triple(double l1, double l2, double l3);
    static Spectrum complex_pair(double a, double b, double c);

    Kind kind() const { return kind_; }
    bool is_real() const { return kind_ == Kind::RealTriple; }

    double l1() const { return x0_; }
    double l2() const { return x1_; }
    double l3() const { return x2_; }

    double a() const { return x0_; }
    double b() const { return x1_; }
    double c() const { return x2_; }

    /// The leading eigenvalue lambda_1 (= a for a conjugate-pair spectrum).
    double perron() const { return x0_; }
    /// Scale used by tolerance comparisons: max(1, |lambda_1|).
    double scale() const;

    std::array<std::complex<double>, 3> expand() const;

    bool operator==(const Spectrum&) const = default;

private:
    Spectrum(Kind kind, double x0, double x1, double x2)
        : kind_(kind), x0_(x0), x1_(x1), x2_(x2) {}

    Kind kind_;
    double x0_, x1_, x2_;
};

/// Prescribed diagonal entries, sorted w1 >= w2 >= w3. Negative entries are
/// representable; nonnegativity is a feasibility condition, not a type
/// invariant.
class DiagonalTriple {
public:
    static DiagonalTriple of(double w1, double w2, double w3);

    double w1() const { return w1_; }
    double w2() const { return w2_; }
    double w3() const { return w3_; }

    bool operator==(const DiagonalTriple&) const = default;

private:
    DiagonalTriple(double w1, double w2, double w3) : w1_(w1), w2_(w2), w3_(w3) {}
    double w1_, w2_, w3_;
};

/// Sorted eigenvalue pair for the 2x2 problems.
struct PairSpectrum {
    double l1, l2;
    static PairSpectrum of(double l1, double l2);
};

/// Sorted diagonal pair for the 2x2 problems.
struct PairDiagonal {
    double w1, w2;
    static PairDiagonal of(double w1, double w2);
};

/// Dense 3x3 real matrix, row-major.
class Matrix3 {
public:
    Matrix3() : e_{} {}

    static Matrix3 from_rows(const std::array<std::array<double, 3>, 3>& rows);

    double operator()(int i, int j) const { return e_[static_cast<std::size_t>(3 * i + j)]; }
    double& operator()(int i, int j) { return e_[static_cast<std::size_t>(3 * i + j)]; }

    double trace() const;
    double row_sum(int i) const;
    double col_sum(int j) const;
    std::array<double, 3> diagonal() const;
    double min_entry() const;

    bool operator==(const Matrix3&) const = default;

private:
    std::array<double, 9> e_;
};

struct Esym {
    double e1, e2, e3;
};

/// Sorts three complex values into canonical form. All-real inputs become a
/// descending RealTriple; a value plus a conjugate pair becomes a
/// ComplexPair with b and c symmetrized (b = mean real part, c = mean
/// |imaginary part|). A pair whose c falls below tolerance collapses to a
/// RealTriple. Throws NotConjugateClosed or NonFinite otherwise.
Spectrum canonicalize_spectrum(const std::array<std::complex<double>, 3>& raw,
                               const Tolerance& tol = {});

/// Sorts three finite reals in nonincreasing order.
DiagonalTriple canonicalize_diagonal(double r1, double r2, double r3);

/// e1 = sum, e2 = sum of pairwise products, e3 = product. For a conjugate
/// pair spectrum all three are real: e1 = a + 2b, e2 = 2ab + b^2 + c^2,
/// e3 = a(b^2 + c^2).
Esym elementary_symmetrics(const Spectrum& s);
Esym elementary_symmetrics(const DiagonalTriple& d);

/// The conjugate-pair formulas directly in (a, b, c); valid at c = 0, where
/// they coincide with the real-triple values for {a, b, b}.
Esym elementary_symmetrics_abc(double a, double b, double c);

}  // namespace niep3
