#ifndef UNCERT_PT_HPP
#define UNCERT_PT_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "uncert/observable.hpp"
#include "uncert/rng.hpp"

namespace uncert::pt {

using uncert::Complex;
using uncert::ComplexMatrix;
using uncert::ComplexVector;
using RealMatrix = Eigen::MatrixXd;

/// Relative residual threshold for every PT-algebra identity.
inline constexpr double kEpsPt = 1e-9;
/// Eigenvalue gaps below this (relative) scale are rejected as degenerate.
inline constexpr double kGapGuard = 1e-8;

enum class Phase { unbroken, broken };

std::string to_string(Phase phase);

/// Finite-dimensional model: Hamiltonian, parity representation, spectrum,
/// and (once built) the spectral involution that fixes the sign problem of
/// the parity inner product. Antilinear conjugation plays the role of time
/// reversal throughout.
struct PTModel {
  std::string id;
  int dim = 0;
  ComplexMatrix h;
  RealMatrix parity;
  Phase phase = Phase::broken;
  ComplexVector spectrum;       // sorted ascending by real part
  ComplexMatrix eigenvectors;   // columns; PT-normalized once C is built
  std::vector<double> pt_norm_signs;  // empty until C is built
  bool labels_flipped = false;  // sign of state 0 came out -1
  std::optional<ComplexMatrix> c_op;
};

/// ||P conj(H) P - H||_inf / max(||H||_inf, 1).
double pt_symmetry_residual(const ComplexMatrix& h, const RealMatrix& parity);

/// True iff the residual is at most kEpsPt. Optionally reports the residual.
bool is_pt_symmetric(const ComplexMatrix& h, const RealMatrix& parity,
                     double* residual = nullptr);

/// Validates the parity matrix (real, symmetric, signed permutation, P^2 = I).
void require_valid_parity(const RealMatrix& parity);

/// Builds a model and solves its spectrum. Requires PT symmetry.
PTModel make_model(ComplexMatrix h, RealMatrix parity, std::string id = "");

/// (psi, phi) = transpose(P conj(psi)) phi = psi^dagger P phi. Indefinite:
/// negative or complex for some states.
Complex pt_inner_product(const ComplexVector& psi, const ComplexVector& phi,
                         const RealMatrix& parity);

/// Constructs the involution C with C phi_n = sign_n phi_n, where sign_n is
/// the sign of the parity norm of the PT-self-conjugate eigenvector. Verifies
/// C^2 = I, [C, H] = 0 and commutation with the antilinear parity map.
void build_c(PTModel& model);

/// (psi, phi) = transpose(C P conj(psi)) phi; positive definite on models
/// with a symmetric C.
Complex cpt_inner_product(const ComplexVector& psi, const ComplexVector& phi,
                          const PTModel& model);

struct ObservableVerdict {
  std::string operator_label;
  bool satisfies_condition = false;
  double residual = 0.0;
  std::string against_model;
};

/// Tests the observability condition: the C-parity-conjugation of A must
/// equal its transpose. The conjugation is evaluated exactly as the
/// composition of C, parity and entrywise conjugation.
ObservableVerdict is_cpt_observable(const ComplexMatrix& a,
                                    const PTModel& model,
                                    const std::string& label = "A");

struct NonUniversalityDemo {
  std::string operator_label;
  ObservableVerdict under_model1;
  ObservableVerdict under_model2;
  bool verdicts_differ = false;
};

/// Takes two Hamiltonians sharing a parity representation, requires both
/// unbroken with no common eigenvectors, and evaluates the first Hamiltonian
/// as a candidate observable under both models.
NonUniversalityDemo non_universality_demo(const ComplexMatrix& h1,
                                          const ComplexMatrix& h2,
                                          const RealMatrix& parity);
NonUniversalityDemo non_universality_demo(const PTModel& m1,
                                          const PTModel& m2);

/// [[r e^{i theta}, s], [s, r e^{-i theta}]]; PT-symmetric for the exchange
/// parity, unbroken iff s^2 > r^2 sin^2(theta).
ComplexMatrix canonical_two_level(double r, double s, double theta);

/// Anti-diagonal exchange matrix.
RealMatrix exchange_parity(int dim);

/// Random complex-symmetric PT-symmetric matrix H = D + i*skew*E with D, E
/// real symmetric, P D P = D and P E P = -E. Complex symmetry keeps the
/// C-conjugation form positive definite.
ComplexMatrix random_pt_symmetric(int dim, const RealMatrix& parity, Rng& rng,
                                  double skew);

/// Draws random_pt_symmetric matrices until the model is unbroken with a
/// safely nondegenerate spectrum, then builds C.
PTModel random_unbroken_model(int dim, Rng& rng, double skew,
                              std::string id = "");

}  // namespace uncert::pt

#endif  // UNCERT_PT_HPP
