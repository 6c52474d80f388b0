#include "uncert/pt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace uncert::pt {

namespace {

const Complex kI{0.0, 1.0};

double scale_of(const ComplexMatrix& m) {
  return std::max(infinity_norm(m), 1.0);
}

}  // namespace

std::string to_string(Phase phase) {
  return phase == Phase::unbroken ? "unbroken" : "broken";
}

void require_valid_parity(const RealMatrix& parity) {
  const int n = static_cast<int>(parity.rows());
  if (n < 1 || parity.cols() != n) {
    throw InvalidParity("parity matrix must be square");
  }
  // Signed permutation: exactly one +-1 per row and column.
  for (int i = 0; i < n; ++i) {
    int hits = 0;
    for (int j = 0; j < n; ++j) {
      const double v = parity(i, j);
      if (v == 0.0) continue;
      if (v != 1.0 && v != -1.0) {
        throw InvalidParity("parity entries must be 0 or +-1");
      }
      ++hits;
    }
    if (hits != 1) {
      throw InvalidParity("parity must be a signed permutation");
    }
  }
  if ((parity * parity - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff() !=
      0.0) {
    throw InvalidParity("parity must square to the identity");
  }
}

double pt_symmetry_residual(const ComplexMatrix& h, const RealMatrix& parity) {
  if (h.rows() != h.cols() || h.rows() != parity.rows()) {
    throw DimensionMismatch("Hamiltonian and parity dimensions differ");
  }
  const ComplexMatrix transformed =
      parity.cast<Complex>() * h.conjugate() * parity.cast<Complex>();
  return infinity_norm(transformed - h) / scale_of(h);
}

bool is_pt_symmetric(const ComplexMatrix& h, const RealMatrix& parity,
                     double* residual) {
  require_valid_parity(parity);
  const double r = pt_symmetry_residual(h, parity);
  if (residual != nullptr) *residual = r;
  return r <= kEpsPt;
}

Complex pt_inner_product(const ComplexVector& psi, const ComplexVector& phi,
                         const RealMatrix& parity) {
  if (psi.size() != phi.size() || psi.size() != parity.rows()) {
    throw DimensionMismatch("inner product dimensions differ");
  }
  return (parity.cast<Complex>() * psi.conjugate()).transpose() * phi;
}

namespace {

void solve_spectrum(PTModel& model) {
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(model.h);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eigenvalue solver did not converge");
  }
  ComplexVector values = solver.eigenvalues();
  ComplexMatrix vectors = solver.eigenvectors();

  std::vector<int> order(model.dim);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    if (values[lhs].real() != values[rhs].real()) {
      return values[lhs].real() < values[rhs].real();
    }
    return values[lhs].imag() < values[rhs].imag();
  });

  model.spectrum.resize(model.dim);
  model.eigenvectors.resize(model.dim, model.dim);
  for (int k = 0; k < model.dim; ++k) {
    model.spectrum[k] = values[order[k]];
    model.eigenvectors.col(k) = vectors.col(order[k]).normalized();
  }

  const double imag_tol = kEpsPt * std::max(infinity_norm(model.h), 1e-30);
  bool real_spectrum = true;
  for (int k = 0; k < model.dim; ++k) {
    if (std::abs(model.spectrum[k].imag()) > imag_tol) {
      real_spectrum = false;
      break;
    }
  }
  bool normalizable = true;
  if (real_spectrum) {
    for (int k = 0; k < model.dim; ++k) {
      const Complex t = pt_inner_product(model.eigenvectors.col(k),
                                         model.eigenvectors.col(k),
                                         model.parity);
      if (std::abs(t) < 1e-8) {
        normalizable = false;
        break;
      }
    }
  }
  model.phase =
      (real_spectrum && normalizable) ? Phase::unbroken : Phase::broken;
}

}  // namespace

PTModel make_model(ComplexMatrix h, RealMatrix parity, std::string id) {
  require_valid_parity(parity);
  PTModel model;
  model.id = id.empty() ? "model" : std::move(id);
  model.dim = static_cast<int>(h.rows());
  if (model.dim < 1 || h.cols() != model.dim ||
      parity.rows() != model.dim) {
    throw DimensionMismatch("model dimensions are inconsistent");
  }
  double residual = 0.0;
  if (!is_pt_symmetric(h, parity, &residual)) {
    std::ostringstream msg;
    msg << "Hamiltonian is not PT-symmetric: residual " << residual;
    throw Error(msg.str());
  }
  model.h = std::move(h);
  model.parity = std::move(parity);
  solve_spectrum(model);
  return model;
}

void build_c(PTModel& model) {
  if (model.phase != Phase::unbroken) {
    throw BrokenPhase("C operator requires an unbroken model");
  }
  const double gap_tol = kGapGuard * scale_of(model.h);
  for (int k = 0; k + 1 < model.dim; ++k) {
    const double gap =
        std::abs(model.spectrum[k + 1].real() - model.spectrum[k].real());
    if (gap < gap_tol) {
      std::ostringstream msg;
      msg << "eigenvalue gap " << gap << " below the degeneracy guard";
      throw DegenerateSpectrum(msg.str());
    }
  }

  const ComplexMatrix parity_c = model.parity.cast<Complex>();
  ComplexMatrix normalized(model.dim, model.dim);
  std::vector<double> signs(model.dim);

  for (int k = 0; k < model.dim; ++k) {
    const ComplexVector v = model.eigenvectors.col(k);
    // Self-conjugation: P conj(v) must be proportional to v with a unimodular
    // factor; absorbing half of its phase makes the vector PT-invariant.
    const ComplexVector u = parity_c * v.conjugate();
    const Complex mu = v.dot(u);
    if (std::abs(std::abs(mu) - 1.0) > 1e-8 ||
        (u - mu * v).norm() > 1e-8) {
      throw DegenerateSpectrum(
          "eigenvector cannot be made invariant under the antilinear parity "
          "map");
    }
    const ComplexVector w = std::exp(kI * (std::arg(mu) / 2.0)) * v;
    const Complex t = w.transpose() * w;  // equals the parity norm of w
    if (std::abs(t) < 1e-10 || std::abs(t.imag()) > 1e-8 * std::abs(t)) {
      throw DegenerateSpectrum(
          "parity norm is not real and nonzero after rescaling");
    }
    signs[k] = t.real() > 0.0 ? 1.0 : -1.0;
    normalized.col(k) = w / std::sqrt(std::abs(t.real()));
  }

  ComplexMatrix sign_diag = ComplexMatrix::Zero(model.dim, model.dim);
  for (int k = 0; k < model.dim; ++k) sign_diag(k, k) = signs[k];
  const ComplexMatrix c = normalized * sign_diag * normalized.inverse();

  // Construction identities, checked rather than assumed.
  const double scale = std::max(infinity_norm(c), 1.0);
  const double c2_defect = infinity_norm(
      c * c - ComplexMatrix::Identity(model.dim, model.dim));
  const double comm_defect = infinity_norm(c * model.h - model.h * c);
  const double pt_defect = infinity_norm(c.conjugate() - parity_c * c * parity_c);
  if (c2_defect > kEpsPt * scale * scale ||
      comm_defect > kEpsPt * scale * scale_of(model.h) ||
      pt_defect > kEpsPt * scale) {
    std::ostringstream msg;
    msg << "constructed C violates its identities: |C^2-I| = " << c2_defect
        << ", |[C,H]| = " << comm_defect << ", |conj(C)-PCP| = " << pt_defect;
    throw NumericalFailure(msg.str());
  }

  model.eigenvectors = normalized;
  model.pt_norm_signs = signs;
  model.labels_flipped = signs[0] < 0.0;
  model.c_op = c;
}

Complex cpt_inner_product(const ComplexVector& psi, const ComplexVector& phi,
                          const PTModel& model) {
  if (!model.c_op.has_value()) {
    throw MissingC("CPT inner product requires a built C operator");
  }
  if (psi.size() != model.dim || phi.size() != model.dim) {
    throw DimensionMismatch("inner product dimensions differ");
  }
  const ComplexVector conjugated =
      *model.c_op * (model.parity.cast<Complex>() * psi.conjugate());
  return conjugated.transpose() * phi;
}

ObservableVerdict is_cpt_observable(const ComplexMatrix& a,
                                    const PTModel& model,
                                    const std::string& label) {
  if (!model.c_op.has_value()) {
    throw MissingC("observability test requires a built C operator");
  }
  if (a.rows() != model.dim || a.cols() != model.dim) {
    throw DimensionMismatch("operator dimension does not match the model");
  }
  const ComplexMatrix cp = *model.c_op * model.parity.cast<Complex>();
  // (C P conj . ) applied twice around A gives C P conj(A) conj(C P).
  const ComplexMatrix conjugated = cp * a.conjugate() * cp.conjugate();
  const double residual =
      infinity_norm(conjugated - a.transpose()) / scale_of(a);

  ObservableVerdict verdict;
  verdict.operator_label = label;
  verdict.residual = residual;
  verdict.satisfies_condition = residual <= kEpsPt;
  verdict.against_model = model.id;
  return verdict;
}

namespace {

void require_no_common_eigenvectors(const PTModel& m1, const PTModel& m2) {
  const double scale = scale_of(m2.h);
  for (int k = 0; k < m1.dim; ++k) {
    const ComplexVector v = m1.eigenvectors.col(k).normalized();
    const ComplexVector image = m2.h * v;
    const Complex mu = v.dot(image);
    const double residual = (image - mu * v).norm() / scale;
    if (residual <= kEpsPt) {
      std::ostringstream msg;
      msg << "eigenvector " << k
          << " of the first model is an eigenvector of the second (residual "
          << residual << ")";
      throw CommonEigenvectors(msg.str());
    }
  }
}

}  // namespace

NonUniversalityDemo non_universality_demo(const PTModel& m1,
                                          const PTModel& m2) {
  if (m1.dim != m2.dim) {
    throw DimensionMismatch("models must share a dimension");
  }
  if (m1.phase != Phase::unbroken || m2.phase != Phase::unbroken) {
    throw BrokenPhase("non-universality demo requires unbroken models");
  }
  require_no_common_eigenvectors(m1, m2);

  PTModel first = m1;
  PTModel second = m2;
  if (!first.c_op.has_value()) build_c(first);
  if (!second.c_op.has_value()) build_c(second);

  NonUniversalityDemo demo;
  demo.operator_label = "H1";
  demo.under_model1 = is_cpt_observable(first.h, first, demo.operator_label);
  demo.under_model2 = is_cpt_observable(first.h, second, demo.operator_label);
  demo.verdicts_differ = demo.under_model1.satisfies_condition !=
                         demo.under_model2.satisfies_condition;
  return demo;
}

NonUniversalityDemo non_universality_demo(const ComplexMatrix& h1,
                                          const ComplexMatrix& h2,
                                          const RealMatrix& parity) {
  PTModel m1 = make_model(h1, parity, "model1");
  PTModel m2 = make_model(h2, parity, "model2");
  return non_universality_demo(m1, m2);
}

ComplexMatrix canonical_two_level(double r, double s, double theta) {
  ComplexMatrix h(2, 2);
  h(0, 0) = r * std::exp(kI * theta);
  h(0, 1) = s;
  h(1, 0) = s;
  h(1, 1) = r * std::exp(-kI * theta);
  return h;
}

RealMatrix exchange_parity(int dim) {
  RealMatrix p = RealMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) p(i, dim - 1 - i) = 1.0;
  return p;
}

ComplexMatrix random_pt_symmetric(int dim, const RealMatrix& parity, Rng& rng,
                                  double skew) {
  RealMatrix d0(dim, dim), e0(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      d0(i, j) = rng.normal();
      e0(i, j) = rng.normal();
    }
  }
  const RealMatrix d_sym = 0.5 * (d0 + d0.transpose());
  const RealMatrix e_sym = 0.5 * (e0 + e0.transpose());
  const RealMatrix d = 0.5 * (d_sym + parity * d_sym * parity);
  const RealMatrix e = 0.5 * (e_sym - parity * e_sym * parity);
  return d.cast<Complex>() + kI * skew * e.cast<Complex>();
}

PTModel random_unbroken_model(int dim, Rng& rng, double skew, std::string id) {
  const RealMatrix parity = exchange_parity(dim);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    PTModel model =
        make_model(random_pt_symmetric(dim, parity, rng, skew), parity, id);
    if (model.phase != Phase::unbroken) continue;
    try {
      build_c(model);
    } catch (const DegenerateSpectrum&) {
      continue;
    }
    return model;
  }
  throw NumericalFailure(
      "failed to draw an unbroken nondegenerate model in 1000 attempts");
}

}  // namespace uncert::pt
