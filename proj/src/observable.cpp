#include "uncert/observable.hpp"

#include <cmath>
#include <sstream>

namespace uncert {

double infinity_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double herm_tolerance(const ComplexMatrix& m) {
  return tol::herm_rel * infinity_norm(m);
}

HermitianOperator::HermitianOperator(ComplexMatrix entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    std::ostringstream msg;
    msg << "operator must be a square matrix of dimension >= 1, got "
        << entries_.rows() << "x" << entries_.cols();
    throw DimensionMismatch(msg.str());
  }
  const double defect =
      (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (defect > herm_tolerance(entries_)) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max |A - A^dagger| entry = " << defect;
    throw NotHermitian(msg.str());
  }
}

StateVector::StateVector(ComplexVector amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) {
    throw DimensionMismatch("state vector must have dimension >= 1");
  }
  const double n = amplitudes_.norm();
  if (std::abs(n - 1.0) > tol::norm) {
    std::ostringstream msg;
    msg << "state vector is not normalized: ||phi|| = " << n;
    throw NotNormalized(msg.str());
  }
}

StateVector StateVector::normalized(const ComplexVector& raw) {
  if (raw.size() < 1) {
    throw DimensionMismatch("state vector must have dimension >= 1");
  }
  const double n = raw.norm();
  if (!(n > 1e-150)) {
    throw ZeroVector("cannot normalize a zero vector");
  }
  return StateVector(raw / n, already_normalized_tag{});
}

namespace {

void require_matching(const HermitianOperator& a, const StateVector& phi) {
  if (a.dim() != phi.dim()) {
    std::ostringstream msg;
    msg << "operator dimension " << a.dim() << " != state dimension "
        << phi.dim();
    throw DimensionMismatch(msg.str());
  }
}

}  // namespace

double expectation(const HermitianOperator& a, const StateVector& phi) {
  require_matching(a, phi);
  const Complex raw = phi.amplitudes().dot(a.matrix() * phi.amplitudes());
  if (std::abs(raw.imag()) > herm_tolerance(a.matrix())) {
    std::ostringstream msg;
    msg << "expectation has imaginary residue " << raw.imag();
    throw NotHermitian(msg.str());
  }
  return raw.real();
}

double std_dev(const HermitianOperator& a, const StateVector& phi) {
  const double mean = expectation(a, phi);
  const ComplexVector centered =
      a.matrix() * phi.amplitudes() - mean * phi.amplitudes();
  return centered.norm();
}

double std_dev_radicand_form(const HermitianOperator& a,
                             const StateVector& phi) {
  require_matching(a, phi);
  const ComplexVector aphi = a.matrix() * phi.amplitudes();
  const double mean = expectation(a, phi);
  const Complex second_raw = aphi.dot(aphi);  // <phi|A^2|phi> for Hermitian A
  const double radicand = second_raw.real() - mean * mean;
  if (radicand < -tol::robertson) {
    std::ostringstream msg;
    msg << "negative variance radicand " << radicand;
    throw NotHermitian(msg.str());
  }
  return std::sqrt(std::max(radicand, 0.0));
}

ComplexMatrix commutator(const HermitianOperator& a,
                         const HermitianOperator& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << "commutator of mismatched dimensions " << a.dim() << " and "
        << b.dim();
    throw DimensionMismatch(msg.str());
  }
  return a.matrix() * b.matrix() - b.matrix() * a.matrix();
}

UncertaintyReport robertson_report(const HermitianOperator& a,
                                   const HermitianOperator& b,
                                   const StateVector& phi) {
  require_matching(a, phi);
  require_matching(b, phi);

  UncertaintyReport report;
  report.delta_a = std_dev(a, phi);
  report.delta_b = std_dev(b, phi);
  report.product = report.delta_a * report.delta_b;

  const ComplexVector v = phi.amplitudes();
  const Complex comm_expect =
      v.dot(a.matrix() * (b.matrix() * v)) - v.dot(b.matrix() * (a.matrix() * v));
  report.bound = 0.5 * std::abs(comm_expect);
  report.gap = report.product - report.bound;
  report.sum_of_squares =
      report.delta_a * report.delta_a + report.delta_b * report.delta_b;

  report.bound_is_zero = report.bound <= tol::zero_bound;
  const double mean_a = expectation(a, phi);
  const double mean_b = expectation(b, phi);
  report.a_eigenstate =
      (a.matrix() * v - mean_a * v).norm() <= tol::zero_bound;
  report.b_eigenstate =
      (b.matrix() * v - mean_b * v).norm() <= tol::zero_bound;
  return report;
}

}  // namespace uncert
