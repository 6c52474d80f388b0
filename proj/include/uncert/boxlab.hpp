#ifndef UNCERT_BOXLAB_HPP
#define UNCERT_BOXLAB_HPP

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "uncert/errors.hpp"
#include "uncert/rng.hpp"

namespace uncert::box {

using Complex = std::complex<double>;

namespace tol {
/// Quadrature target for smooth integrands at the default grid size.
inline constexpr double quad = 1e-8;
/// Finite-difference truncation target for smooth grid functions.
inline constexpr double diff = 1e-6;
/// Boundary-law residual threshold, closed-form representations.
inline constexpr double bc_closed = 1e-8;
/// Boundary-law residual threshold, grid representations.
inline constexpr double bc_grid = 1e-5;
/// State normalization defect.
inline constexpr double norm = 1e-12;
}  // namespace tol

inline constexpr int kDefaultGridSize = 2049;

enum class IntervalVariant { standard, symmetric };

/// The configuration interval of the box. `standard` is (0, l); `symmetric`
/// is (-l/2, +l/2).
struct BoxInterval {
  double a = 0.0;
  double b = 1.0;
  IntervalVariant variant = IntervalVariant::standard;

  static BoxInterval standard(double length);
  static BoxInterval symmetric(double length);

  double length() const { return b - a; }
};

bool same_interval(const BoxInterval& lhs, const BoxInterval& rhs);

/// One member of the boundary-law family of momentum operators on the box:
/// -i hbar d/dx with f(right) = exp(i theta) f(left).
struct MomentumExtension {
  double theta = 0.0;  // in [0, 2*pi)
  BoxInterval interval;
  double hbar = 1.0;

  MomentumExtension(double theta, BoxInterval interval, double hbar = 1.0);
};

/// Term of an analytic wavefunction: coeff * x^xpow * exp(i * wavenum * x).
struct ClosedFormTerm {
  Complex coeff;
  int xpow = 0;
  double wavenum = 0.0;
};

/// Analytic representation closed under differentiation, multiplication by
/// x, and conjugate products, with exact integrals over any finite interval.
class ClosedForm {
 public:
  ClosedForm() = default;
  explicit ClosedForm(std::vector<ClosedFormTerm> terms);

  Complex eval(double x) const;
  ClosedForm derivative() const;
  ClosedForm times_x() const;
  ClosedForm scaled(Complex factor) const;
  static ClosedForm sum(const ClosedForm& f, const ClosedForm& g);

  /// Exact integral of conj(f) * g over [a, b].
  static Complex integrate_conj_product(const ClosedForm& f,
                                        const ClosedForm& g, double a,
                                        double b);

  const std::vector<ClosedFormTerm>& terms() const { return terms_; }

 private:
  std::vector<ClosedFormTerm> terms_;
};

/// Exact integral of x^xpow * exp(i q x) over [a, b].
Complex integrate_monomial_wave(int xpow, double q, double a, double b);

/// Wavefunction on the box with either an analytic or a uniform-grid
/// representation. Boundary values are exact for the analytic form and the
/// endpoint samples for the grid form; every boundary-law statement in this
/// module is evaluated from them.
class BoxWavefunction {
 public:
  struct GridData {
    std::vector<Complex> samples;  // uniform, endpoints included, odd size
  };

  static BoxWavefunction from_closed_form(BoxInterval interval, ClosedForm f);
  static BoxWavefunction from_grid(BoxInterval interval,
                                   std::vector<Complex> samples);

  /// cos(wavenum * x + phase) as a two-term analytic form (unnormalized).
  static BoxWavefunction trig(BoxInterval interval, double wavenum,
                              double phase);

  const BoxInterval& interval() const { return interval_; }
  bool is_closed_form() const;
  const ClosedForm& closed_form() const;        // requires is_closed_form
  const std::vector<Complex>& grid() const;     // requires !is_closed_form
  int grid_size() const;                        // 0 for closed form

  Complex boundary_left() const { return boundary_left_; }
  Complex boundary_right() const { return boundary_right_; }

  Complex eval(double x) const;  // grid form interpolates linearly
  double l2_norm() const;
  double sup_norm() const;

  BoxWavefunction normalized() const;  // throws ZeroVector on zero input
  BoxWavefunction scaled(Complex factor) const;
  /// Samples the analytic form onto a uniform grid representation.
  BoxWavefunction to_grid(int size = kDefaultGridSize) const;

  /// this + factor * other. Mixed representations are sampled to a grid.
  BoxWavefunction add_scaled(const BoxWavefunction& other,
                             Complex factor) const;

 private:
  BoxWavefunction(BoxInterval interval,
                  std::variant<ClosedForm, GridData> representation);
  void refresh_boundaries();

  BoxInterval interval_;
  std::variant<ClosedForm, GridData> representation_;
  Complex boundary_left_{0.0, 0.0};
  Complex boundary_right_{0.0, 0.0};
};

struct DomainVerdict {
  bool in_domain = false;
  double residual = 0.0;
  /// Present when the state violates the checked boundary law but satisfies
  /// the law of a unique other extension parameter.
  std::optional<double> shifted_theta;
  std::string note;
};

struct CommutatorExpectation {
  bool defined = false;
  Complex value{0.0, 0.0};
  std::string offending_factor;  // names the undefined operator product(s)
};

enum class BoundFormula { canonical_half_hbar, xm_boundary_formula, undefined };

std::string to_string(BoundFormula formula);

struct BoxUncertaintyReport {
  double delta_x = 0.0;
  std::optional<double> delta_p;
  std::optional<double> product;
  bool commutator_defined = false;
  std::optional<double> bound;
  BoundFormula bound_formula = BoundFormula::undefined;
  std::string notes;
};

/// hbar * (2*pi*n + theta) / l.
double eigenvalue(const MomentumExtension& ext, int n);

/// Plane-wave eigenfunction (1/sqrt(l)) exp(i p_n x / hbar); unit norm and a
/// zero boundary residual analytically.
BoxWavefunction eigenfunction(const MomentumExtension& ext, int n);

/// L2 pairing <f, g> = integral of conj(f)*g. Analytic when both operands
/// are closed-form, composite Simpson otherwise.
Complex inner_product(const BoxWavefunction& f, const BoxWavefunction& g);

/// Pointwise multiplication by x (unnormalized result).
BoxWavefunction apply_position(const BoxWavefunction& f);

/// -i hbar f'. Requires f to satisfy the extension's boundary law; throws
/// OutOfDomain otherwise instead of silently differentiating.
BoxWavefunction apply_momentum(const BoxWavefunction& f,
                               const MomentumExtension& ext);

/// Boundary-law residual |f(right) - exp(i theta) f(left)| / max(sup|f|, 1)
/// plus, on failure, the unique parameter that the state does satisfy.
DomainVerdict domain_check(const BoxWavefunction& f,
                           const MomentumExtension& ext);

/// <f|P X f> - <f|X P f>, evaluated only when both X f and f satisfy the
/// extension's boundary law; otherwise reports which factor is undefined.
CommutatorExpectation commutator_expectation_canonical(
    const BoxWavefunction& f, const MomentumExtension& ext);

/// Window-constrained position operator: multiplication by x on states
/// supported in the symmetric box. Standard-variant input is rejected.
BoxWavefunction xm_apply(const BoxWavefunction& f);

/// Boundary-value form of <[P, X_M]> for a normalized state on the
/// symmetric box: i hbar (l/2) (|f(-l/2)|^2 + |f(+l/2)|^2) - i hbar.
Complex xm_commutator_expectation(const BoxWavefunction& f, double hbar = 1.0);

/// Numerical route to the same quantity: finite-difference/Simpson pairing
/// over the interior plus the analytic wall-jump contribution of the window.
/// The jump terms vanish for wall-vanishing states, which makes the
/// comparison against the boundary formula fully independent there.
Complex xm_commutator_quadrature(const BoxWavefunction& f, double hbar = 1.0);

/// Uncertainty report for the pair (X_M, P^theta) in the given state.
BoxUncertaintyReport xm_uncertainty_report(const BoxWavefunction& f,
                                           const MomentumExtension& ext);

/// Report for the unmodified pair (X, P^theta); the bound is present only
/// when the canonical commutator expectation is defined.
BoxUncertaintyReport canonical_uncertainty_report(const BoxWavefunction& f,
                                                  const MomentumExtension& ext);

enum class WallConstraint { free, vanishing, unit_modulus };

/// Random smooth trigonometric test state with controlled wall behavior:
/// `vanishing` states are zero at both walls, `unit_modulus` states have
/// |f| = 1/sqrt(l) everywhere, `free` states have generic wall values.
/// Wavenumbers stay at or below max_mode * pi / l so grid differentiation
/// remains well inside its truncation target.
BoxWavefunction random_trig_state(const BoxInterval& interval, Rng& rng,
                                  int max_mode, WallConstraint constraint);

}  // namespace uncert::box

#endif  // UNCERT_BOXLAB_HPP
