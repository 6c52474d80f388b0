#ifndef UNCERT_OBSERVABLE_HPP
#define UNCERT_OBSERVABLE_HPP

#include <Eigen/Dense>
#include <complex>

#include "uncert/errors.hpp"

namespace uncert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

namespace tol {
/// State normalization defect.
inline constexpr double norm = 1e-12;
/// Robertson-type comparisons, relative to max(1, product).
inline constexpr double robertson = 1e-9;
/// Threshold below which a lower bound counts as degenerate (zero).
inline constexpr double zero_bound = 1e-9;
/// Hermiticity defect, relative to the matrix infinity norm.
inline constexpr double herm_rel = 1e-10;
}  // namespace tol

/// Induced infinity norm (max absolute row sum).
double infinity_norm(const ComplexMatrix& m);

/// Absolute Hermiticity tolerance for a given matrix: herm_rel * ||m||_inf.
double herm_tolerance(const ComplexMatrix& m);

/// Finite-dimensional observable: a complex square matrix that is validated
/// as self-adjoint at construction. Violating inputs are rejected, never
/// symmetrized.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& matrix() const { return entries_; }

 private:
  ComplexMatrix entries_;
};

/// Normalized state vector. Use `normalized` to build one from raw
/// amplitudes; the direct constructor requires unit norm.
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes);

  /// Normalizes raw amplitudes. Throws ZeroVector for (numerically) zero input.
  static StateVector normalized(const ComplexVector& raw);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }

 private:
  struct already_normalized_tag {};
  StateVector(ComplexVector amplitudes, already_normalized_tag)
      : amplitudes_(std::move(amplitudes)) {}

  ComplexVector amplitudes_;
};

struct UncertaintyReport {
  double delta_a = 0.0;
  double delta_b = 0.0;
  double product = 0.0;
  double bound = 0.0;
  double gap = 0.0;  // product - bound
  double sum_of_squares = 0.0;  // delta_a^2 + delta_b^2, no bound claim attached
  bool bound_is_zero = false;
  bool a_eigenstate = false;
  bool b_eigenstate = false;
};

/// <phi|A|phi>. The raw inner product must be real up to the Hermiticity
/// tolerance of A; the real part is returned.
double expectation(const HermitianOperator& a, const StateVector& phi);

/// ||(A - <A>I) phi||. Agrees with sqrt(<A^2> - <A>^2) up to tol::robertson;
/// the norm form avoids the cancellation of the radicand form.
double std_dev(const HermitianOperator& a, const StateVector& phi);

/// Cross-check variant sqrt(<A^2> - <A>^2). A radicand below -tol::robertson
/// signals a non-Hermitian input; small negatives are clamped to zero.
double std_dev_radicand_form(const HermitianOperator& a, const StateVector& phi);

/// AB - BA. The result is anti-Hermitian up to the Hermiticity tolerances.
ComplexMatrix commutator(const HermitianOperator& a, const HermitianOperator& b);

/// Full report for the pair (A, B) in state phi: deviations, their product,
/// the lower bound (1/2)|<[A,B]>|, and degeneracy flags.
UncertaintyReport robertson_report(const HermitianOperator& a,
                                   const HermitianOperator& b,
                                   const StateVector& phi);

}  // namespace uncert

#endif  // UNCERT_OBSERVABLE_HPP
