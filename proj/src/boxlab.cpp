#include "uncert/boxlab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

namespace uncert::box {

namespace {

const Complex kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * M_PI;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

}  // namespace

BoxInterval BoxInterval::standard(double length) {
  if (!(length > 0.0)) {
    throw Error("box length must be positive");
  }
  return BoxInterval{0.0, length, IntervalVariant::standard};
}

BoxInterval BoxInterval::symmetric(double length) {
  if (!(length > 0.0)) {
    throw Error("box length must be positive");
  }
  return BoxInterval{-0.5 * length, 0.5 * length, IntervalVariant::symmetric};
}

bool same_interval(const BoxInterval& lhs, const BoxInterval& rhs) {
  return lhs.a == rhs.a && lhs.b == rhs.b && lhs.variant == rhs.variant;
}

namespace {

void require_valid_interval(const BoxInterval& interval) {
  if (!(interval.a < interval.b)) {
    throw Error("interval must satisfy a < b");
  }
  if (interval.variant == IntervalVariant::standard && interval.a != 0.0) {
    throw Error("standard interval must start at 0");
  }
  if (interval.variant == IntervalVariant::symmetric &&
      interval.a != -interval.b) {
    throw Error("symmetric interval must be centered at 0");
  }
}

}  // namespace

MomentumExtension::MomentumExtension(double theta_in, BoxInterval interval_in,
                                     double hbar_in)
    : theta(theta_in), interval(interval_in), hbar(hbar_in) {
  require_valid_interval(interval);
  if (!(hbar > 0.0)) {
    throw Error("hbar must be positive");
  }
  if (theta < 0.0 || theta >= kTwoPi) {
    std::ostringstream msg;
    msg << "extension parameter theta must lie in [0, 2*pi), got " << theta;
    throw Error(msg.str());
  }
}

// ---------------------------------------------------------------------------
// Closed-form representation
// ---------------------------------------------------------------------------

ClosedForm::ClosedForm(std::vector<ClosedFormTerm> terms) {
  // Merge duplicate (xpow, wavenum) keys and drop zero terms.
  std::map<std::pair<int, double>, Complex> merged;
  for (const ClosedFormTerm& t : terms) {
    if (t.xpow < 0) throw Error("closed-form x power must be nonnegative");
    merged[{t.xpow, t.wavenum}] += t.coeff;
  }
  for (const auto& [key, coeff] : merged) {
    if (coeff == Complex{0.0, 0.0}) continue;
    terms_.push_back(ClosedFormTerm{coeff, key.first, key.second});
  }
}

Complex ClosedForm::eval(double x) const {
  Complex out{0.0, 0.0};
  for (const ClosedFormTerm& t : terms_) {
    double xp = 1.0;
    for (int k = 0; k < t.xpow; ++k) xp *= x;
    out += t.coeff * xp * std::exp(kI * (t.wavenum * x));
  }
  return out;
}

ClosedForm ClosedForm::derivative() const {
  std::vector<ClosedFormTerm> out;
  out.reserve(2 * terms_.size());
  for (const ClosedFormTerm& t : terms_) {
    if (t.xpow > 0) {
      out.push_back(
          ClosedFormTerm{t.coeff * static_cast<double>(t.xpow), t.xpow - 1,
                         t.wavenum});
    }
    if (t.wavenum != 0.0) {
      out.push_back(ClosedFormTerm{t.coeff * kI * t.wavenum, t.xpow, t.wavenum});
    }
  }
  return ClosedForm(std::move(out));
}

ClosedForm ClosedForm::times_x() const {
  std::vector<ClosedFormTerm> out = terms_;
  for (ClosedFormTerm& t : out) t.xpow += 1;
  return ClosedForm(std::move(out));
}

ClosedForm ClosedForm::scaled(Complex factor) const {
  std::vector<ClosedFormTerm> out = terms_;
  for (ClosedFormTerm& t : out) t.coeff *= factor;
  return ClosedForm(std::move(out));
}

ClosedForm ClosedForm::sum(const ClosedForm& f, const ClosedForm& g) {
  std::vector<ClosedFormTerm> out = f.terms_;
  out.insert(out.end(), g.terms_.begin(), g.terms_.end());
  return ClosedForm(std::move(out));
}

Complex integrate_monomial_wave(int xpow, double q, double a, double b) {
  if (xpow < 0) throw Error("monomial power must be nonnegative");
  auto power_integral = [&](int m) {
    // (b^{m+1} - a^{m+1}) / (m+1)
    double bp = b, ap = a;
    for (int k = 0; k < m; ++k) {
      bp *= b;
      ap *= a;
    }
    return (bp - ap) / static_cast<double>(m + 1);
  };

  if (q == 0.0) {
    return Complex{power_integral(xpow), 0.0};
  }

  const double scale = std::abs(q) * std::max(std::abs(a), std::abs(b));
  if (scale <= 1.0) {
    // Short-wavelength expansion: sum_t (iq)^t / t! * int x^{xpow+t}.
    // Converges fast for |q x| <= 1 and avoids the cancellation of the
    // antiderivative route at small q. Individual terms can vanish on
    // symmetric intervals, so the cutoff watches the factor magnitude.
    Complex sum{0.0, 0.0};
    Complex factor{1.0, 0.0};
    const double reach = std::max(std::abs(a), std::abs(b));
    for (int t = 0; t < 64; ++t) {
      sum += factor * power_integral(xpow + t);
      const double tail_bound =
          std::abs(factor) * std::pow(reach, xpow + t + 1) * (b - a);
      if (tail_bound < 1e-18 * (1.0 + std::abs(sum))) break;
      factor *= kI * q / static_cast<double>(t + 1);
    }
    return sum;
  }

  // Antiderivative e^{iqx} P(x) with P from the downward recurrence.
  std::vector<Complex> poly(xpow + 1);
  poly[xpow] = 1.0 / (kI * q);
  for (int j = xpow; j >= 1; --j) {
    poly[j - 1] = -static_cast<double>(j) * poly[j] / (kI * q);
  }
  auto eval_antiderivative = [&](double x) {
    Complex p{0.0, 0.0};
    for (int j = xpow; j >= 0; --j) p = p * x + poly[j];
    return std::exp(kI * (q * x)) * p;
  };
  return eval_antiderivative(b) - eval_antiderivative(a);
}

Complex ClosedForm::integrate_conj_product(const ClosedForm& f,
                                           const ClosedForm& g, double a,
                                           double b) {
  Complex out{0.0, 0.0};
  for (const ClosedFormTerm& tf : f.terms_) {
    for (const ClosedFormTerm& tg : g.terms_) {
      const Complex coeff = std::conj(tf.coeff) * tg.coeff;
      out += coeff * integrate_monomial_wave(tf.xpow + tg.xpow,
                                             tg.wavenum - tf.wavenum, a, b);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grid helpers
// ---------------------------------------------------------------------------

namespace {

double grid_spacing(const BoxInterval& interval, int size) {
  return interval.length() / static_cast<double>(size - 1);
}

double grid_x(const BoxInterval& interval, int size, int i) {
  return interval.a + grid_spacing(interval, size) * static_cast<double>(i);
}

/// Composite Simpson over a uniform grid with an odd number of samples.
Complex simpson(const std::vector<Complex>& values, double h) {
  const int m = static_cast<int>(values.size());
  Complex sum = values.front() + values.back();
  for (int i = 1; i < m - 1; ++i) {
    sum += values[i] * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * (h / 3.0);
}

/// 4th-order first derivative: central stencils inside, one-sided 5-point
/// stencils at the two points next to each wall.
std::vector<Complex> fd_derivative(const std::vector<Complex>& f, double h) {
  const int m = static_cast<int>(f.size());
  std::vector<Complex> d(m);
  const double inv12h = 1.0 / (12.0 * h);
  d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] -
          3.0 * f[4]) *
         inv12h;
  d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) *
         inv12h;
  for (int i = 2; i < m - 2; ++i) {
    d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * inv12h;
  }
  d[m - 2] = (3.0 * f[m - 1] + 10.0 * f[m - 2] - 18.0 * f[m - 3] +
              6.0 * f[m - 4] - f[m - 5]) *
             inv12h;
  d[m - 1] = (25.0 * f[m - 1] - 48.0 * f[m - 2] + 36.0 * f[m - 3] -
              16.0 * f[m - 4] + 3.0 * f[m - 5]) *
             inv12h;
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// BoxWavefunction
// ---------------------------------------------------------------------------

BoxWavefunction::BoxWavefunction(
    BoxInterval interval, std::variant<ClosedForm, GridData> representation)
    : interval_(interval), representation_(std::move(representation)) {
  refresh_boundaries();
}

void BoxWavefunction::refresh_boundaries() {
  if (is_closed_form()) {
    const ClosedForm& f = std::get<ClosedForm>(representation_);
    boundary_left_ = f.eval(interval_.a);
    boundary_right_ = f.eval(interval_.b);
  } else {
    const GridData& g = std::get<GridData>(representation_);
    boundary_left_ = g.samples.front();
    boundary_right_ = g.samples.back();
  }
}

BoxWavefunction BoxWavefunction::from_closed_form(BoxInterval interval,
                                                  ClosedForm f) {
  return BoxWavefunction(interval, std::move(f));
}

BoxWavefunction BoxWavefunction::from_grid(BoxInterval interval,
                                           std::vector<Complex> samples) {
  const int m = static_cast<int>(samples.size());
  if (m < 5 || m % 2 == 0) {
    std::ostringstream msg;
    msg << "grid representation needs an odd sample count >= 5, got " << m;
    throw GridMismatch(msg.str());
  }
  return BoxWavefunction(interval, GridData{std::move(samples)});
}

BoxWavefunction BoxWavefunction::trig(BoxInterval interval, double wavenum,
                                      double phase) {
  // cos(k x + phase) = (e^{i phase}/2) e^{ikx} + (e^{-i phase}/2) e^{-ikx}
  std::vector<ClosedFormTerm> terms{
      {0.5 * std::exp(kI * phase), 0, wavenum},
      {0.5 * std::exp(-kI * phase), 0, -wavenum}};
  return from_closed_form(interval, ClosedForm(std::move(terms)));
}

bool BoxWavefunction::is_closed_form() const {
  return std::holds_alternative<ClosedForm>(representation_);
}

const ClosedForm& BoxWavefunction::closed_form() const {
  return std::get<ClosedForm>(representation_);
}

const std::vector<Complex>& BoxWavefunction::grid() const {
  return std::get<GridData>(representation_).samples;
}

int BoxWavefunction::grid_size() const {
  return is_closed_form() ? 0
                          : static_cast<int>(
                                std::get<GridData>(representation_).samples.size());
}

Complex BoxWavefunction::eval(double x) const {
  if (is_closed_form()) {
    return std::get<ClosedForm>(representation_).eval(x);
  }
  const GridData& g = std::get<GridData>(representation_);
  const int m = static_cast<int>(g.samples.size());
  const double h = grid_spacing(interval_, m);
  const double s = (x - interval_.a) / h;
  const int i = std::clamp(static_cast<int>(std::floor(s)), 0, m - 2);
  const double w = s - static_cast<double>(i);
  return (1.0 - w) * g.samples[i] + w * g.samples[i + 1];
}

double BoxWavefunction::l2_norm() const {
  const Complex ip = inner_product(*this, *this);
  return std::sqrt(std::max(ip.real(), 0.0));
}

double BoxWavefunction::sup_norm() const {
  if (!is_closed_form()) {
    double out = 0.0;
    for (const Complex& v : grid()) out = std::max(out, std::abs(v));
    return out;
  }
  const ClosedForm& f = std::get<ClosedForm>(representation_);
  constexpr int kProbes = 4097;
  double out = 0.0;
  for (int i = 0; i < kProbes; ++i) {
    const double x = interval_.a + interval_.length() * i / (kProbes - 1.0);
    out = std::max(out, std::abs(f.eval(x)));
  }
  return out;
}

BoxWavefunction BoxWavefunction::normalized() const {
  const double n = l2_norm();
  if (!(n > 1e-150)) {
    throw ZeroVector("cannot normalize a zero wavefunction");
  }
  return scaled(Complex{1.0 / n, 0.0});
}

BoxWavefunction BoxWavefunction::scaled(Complex factor) const {
  if (is_closed_form()) {
    return from_closed_form(interval_, closed_form().scaled(factor));
  }
  std::vector<Complex> samples = grid();
  for (Complex& v : samples) v *= factor;
  return BoxWavefunction(interval_, GridData{std::move(samples)});
}

BoxWavefunction BoxWavefunction::to_grid(int size) const {
  if (size < 5 || size % 2 == 0) {
    throw GridMismatch("grid sample count must be odd and >= 5");
  }
  if (!is_closed_form() && grid_size() == size) return *this;
  std::vector<Complex> samples(size);
  for (int i = 0; i < size; ++i) {
    samples[i] = eval(grid_x(interval_, size, i));
  }
  return BoxWavefunction(interval_, GridData{std::move(samples)});
}

BoxWavefunction BoxWavefunction::add_scaled(const BoxWavefunction& other,
                                            Complex factor) const {
  if (!same_interval(interval_, other.interval_)) {
    throw IntervalMismatch("cannot combine wavefunctions on different boxes");
  }
  if (is_closed_form() && other.is_closed_form()) {
    return from_closed_form(
        interval_, ClosedForm::sum(closed_form(), other.closed_form().scaled(factor)));
  }
  const BoxWavefunction* lhs = this;
  const BoxWavefunction* rhs = &other;
  BoxWavefunction lhs_grid = *this, rhs_grid = other;
  if (lhs->is_closed_form()) {
    lhs_grid = to_grid(other.grid_size());
  } else if (rhs->is_closed_form()) {
    rhs_grid = other.to_grid(grid_size());
  } else if (grid_size() != other.grid_size()) {
    throw GridMismatch("cannot combine grids of different sizes");
  }
  std::vector<Complex> samples = lhs_grid.grid();
  const std::vector<Complex>& add = rhs_grid.grid();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] += factor * add[i];
  }
  return BoxWavefunction(interval_, GridData{std::move(samples)});
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

double eigenvalue(const MomentumExtension& ext, int n) {
  return ext.hbar * (kTwoPi * n + ext.theta) / ext.interval.length();
}

BoxWavefunction eigenfunction(const MomentumExtension& ext, int n) {
  const double l = ext.interval.length();
  const double wavenum = eigenvalue(ext, n) / ext.hbar;
  std::vector<ClosedFormTerm> terms{
      {Complex{1.0 / std::sqrt(l), 0.0}, 0, wavenum}};
  return BoxWavefunction::from_closed_form(ext.interval,
                                           ClosedForm(std::move(terms)));
}

Complex inner_product(const BoxWavefunction& f, const BoxWavefunction& g) {
  if (!same_interval(f.interval(), g.interval())) {
    throw IntervalMismatch("inner product requires a common box");
  }
  if (f.is_closed_form() && g.is_closed_form()) {
    return ClosedForm::integrate_conj_product(
        f.closed_form(), g.closed_form(), f.interval().a, f.interval().b);
  }
  int size = kDefaultGridSize;
  if (!f.is_closed_form() && !g.is_closed_form()) {
    if (f.grid_size() != g.grid_size()) {
      throw GridMismatch("inner product requires grids of equal size");
    }
    size = f.grid_size();
  } else {
    size = f.is_closed_form() ? g.grid_size() : f.grid_size();
  }
  const BoxWavefunction fg = f.to_grid(size);
  const BoxWavefunction gg = g.to_grid(size);
  std::vector<Complex> integrand(size);
  const std::vector<Complex>& fs = fg.grid();
  const std::vector<Complex>& gs = gg.grid();
  for (int i = 0; i < size; ++i) {
    integrand[i] = std::conj(fs[i]) * gs[i];
  }
  return simpson(integrand, grid_spacing(f.interval(), size));
}

BoxWavefunction apply_position(const BoxWavefunction& f) {
  if (f.is_closed_form()) {
    return BoxWavefunction::from_closed_form(f.interval(),
                                             f.closed_form().times_x());
  }
  std::vector<Complex> samples = f.grid();
  const int m = static_cast<int>(samples.size());
  for (int i = 0; i < m; ++i) {
    samples[i] *= grid_x(f.interval(), m, i);
  }
  return BoxWavefunction::from_grid(f.interval(), std::move(samples));
}

BoxWavefunction apply_momentum(const BoxWavefunction& f,
                               const MomentumExtension& ext) {
  const DomainVerdict verdict = domain_check(f, ext);
  if (!verdict.in_domain) {
    std::ostringstream msg;
    msg << "state violates the boundary law of the extension (residual "
        << verdict.residual << ")";
    throw OutOfDomain(msg.str(), verdict.residual);
  }
  const Complex factor = -kI * ext.hbar;
  if (f.is_closed_form()) {
    return BoxWavefunction::from_closed_form(
        f.interval(), f.closed_form().derivative().scaled(factor));
  }
  const std::vector<Complex>& samples = f.grid();
  const double h = grid_spacing(f.interval(), static_cast<int>(samples.size()));
  std::vector<Complex> d = fd_derivative(samples, h);
  for (Complex& v : d) v *= factor;
  return BoxWavefunction::from_grid(f.interval(), std::move(d));
}

DomainVerdict domain_check(const BoxWavefunction& f,
                           const MomentumExtension& ext) {
  if (!same_interval(f.interval(), ext.interval)) {
    throw IntervalMismatch("domain check requires a matching box");
  }
  const Complex left = f.boundary_left();
  const Complex right = f.boundary_right();
  const double denom = std::max(f.sup_norm(), 1.0);
  const double eps_bc = f.is_closed_form() ? tol::bc_closed : tol::bc_grid;

  DomainVerdict verdict;
  verdict.residual = std::abs(right - std::exp(kI * ext.theta) * left) / denom;
  verdict.in_domain = verdict.residual <= eps_bc;
  if (verdict.in_domain) return verdict;

  if (std::abs(left) > 0.0) {
    // The residual over theta is minimized exactly by the phase of the
    // boundary ratio.
    const double candidate = wrap_angle(std::arg(right / left));
    const double residual_at_candidate =
        std::abs(right - std::exp(kI * candidate) * left) / denom;
    if (residual_at_candidate <= eps_bc) {
      verdict.shifted_theta = candidate;
      std::ostringstream note;
      note << "state satisfies the boundary law of theta = " << candidate
           << " instead";
      verdict.note = note.str();
      return verdict;
    }
    verdict.note = "no extension parameter fits the boundary values";
    return verdict;
  }

  // Left wall value is exactly zero: scan the parameter circle. All
  // parameters then share the same residual, so a fit only exists if the
  // right value vanishes too (handled above by in_domain).
  double best_residual = verdict.residual;
  double best_theta = ext.theta;
  constexpr int kThetaGrid = 4096;
  for (int i = 0; i < kThetaGrid; ++i) {
    const double theta = kTwoPi * i / kThetaGrid;
    const double r = std::abs(right - std::exp(kI * theta) * left) / denom;
    if (r < best_residual) {
      best_residual = r;
      best_theta = theta;
    }
  }
  if (best_residual <= eps_bc) {
    verdict.shifted_theta = best_theta;
    verdict.note = "boundary fit located by parameter scan";
  } else {
    verdict.note =
        "no extension parameter fits: left wall value vanishes while the "
        "right wall value does not";
  }
  return verdict;
}

CommutatorExpectation commutator_expectation_canonical(
    const BoxWavefunction& f, const MomentumExtension& ext) {
  CommutatorExpectation out;
  const BoxWavefunction xf = apply_position(f);

  std::string offending;
  if (!domain_check(xf, ext).in_domain) {
    offending = "P X";  // X f left the extension domain
  }
  if (!domain_check(f, ext).in_domain) {
    if (!offending.empty()) offending += ", ";
    offending += "X P";  // f itself is outside, so P f is undefined
  }
  if (!offending.empty()) {
    out.defined = false;
    out.offending_factor = offending;
    return out;
  }

  const BoxWavefunction p_of_xf = apply_momentum(xf, ext);
  const BoxWavefunction x_of_pf = apply_position(apply_momentum(f, ext));
  out.defined = true;
  out.value = inner_product(f, p_of_xf) - inner_product(f, x_of_pf);
  return out;
}

BoxWavefunction xm_apply(const BoxWavefunction& f) {
  if (f.interval().variant != IntervalVariant::symmetric) {
    throw UnsupportedInterval(
        "the window-constrained position operator acts on the symmetric box");
  }
  // The window is the identity on states supported in the box.
  return apply_position(f);
}

namespace {

// Grid norms carry the quadrature error of the representation itself, so
// the normalization gate is wider there than for analytic forms.
void require_normalized(const BoxWavefunction& f) {
  const double eps = f.is_closed_form() ? tol::norm : 10.0 * tol::quad;
  const double n = f.l2_norm();
  if (std::abs(n - 1.0) > eps) {
    std::ostringstream msg;
    msg << "wavefunction is not normalized: ||f|| = " << n
        << " (defect " << std::abs(n - 1.0) << ")";
    throw NotNormalized(msg.str());
  }
}

void require_symmetric_normalized(const BoxWavefunction& f) {
  if (f.interval().variant != IntervalVariant::symmetric) {
    throw UnsupportedInterval("operation requires the symmetric box");
  }
  require_normalized(f);
}

}  // namespace

Complex xm_commutator_expectation(const BoxWavefunction& f, double hbar) {
  require_symmetric_normalized(f);
  const double half_l = 0.5 * f.interval().length();
  const double wall_sum = std::norm(f.boundary_left()) +
                          std::norm(f.boundary_right());
  return kI * hbar * (half_l * wall_sum - 1.0);
}

Complex xm_commutator_quadrature(const BoxWavefunction& f, double hbar) {
  require_symmetric_normalized(f);
  const BoxWavefunction fg =
      f.is_closed_form() ? f.to_grid(kDefaultGridSize) : f;
  const std::vector<Complex>& fs = fg.grid();
  const int m = static_cast<int>(fs.size());
  const double h = grid_spacing(fg.interval(), m);

  std::vector<Complex> xf(m);
  for (int i = 0; i < m; ++i) {
    xf[i] = grid_x(fg.interval(), m, i) * fs[i];
  }
  const std::vector<Complex> d_xf = fd_derivative(xf, h);
  const std::vector<Complex> d_f = fd_derivative(fs, h);

  std::vector<Complex> integrand(m);
  const Complex factor = -kI * hbar;
  for (int i = 0; i < m; ++i) {
    const double x = grid_x(fg.interval(), m, i);
    integrand[i] = std::conj(fs[i]) * factor * (d_xf[i] - x * d_f[i]);
  }
  const Complex interior = simpson(integrand, h);

  // The window steps of the constrained position operator contribute delta
  // terms at the walls; they are evaluated analytically from the boundary
  // values rather than discretized.
  const double half_l = 0.5 * f.interval().length();
  const Complex jump = kI * hbar * half_l *
                       (std::norm(f.boundary_left()) +
                        std::norm(f.boundary_right()));
  return interior + jump;
}

namespace {

struct DeviationStats {
  double mean = 0.0;
  double deviation = 0.0;
};

DeviationStats deviation_of(const BoxWavefunction& f,
                            const BoxWavefunction& op_f) {
  DeviationStats stats;
  stats.mean = inner_product(f, op_f).real();
  const BoxWavefunction centered =
      op_f.add_scaled(f, Complex{-stats.mean, 0.0});
  stats.deviation = centered.l2_norm();
  return stats;
}

void fill_momentum_stats(const BoxWavefunction& f, const MomentumExtension& ext,
                         BoxUncertaintyReport& report) {
  const DomainVerdict verdict = domain_check(f, ext);
  if (!verdict.in_domain) {
    std::ostringstream note;
    note << "momentum deviation unavailable: state violates the boundary law "
         << "(residual " << verdict.residual << ")";
    if (!report.notes.empty()) report.notes += "; ";
    report.notes += note.str();
    return;
  }
  const DeviationStats p = deviation_of(f, apply_momentum(f, ext));
  report.delta_p = p.deviation;
  report.product = report.delta_x * p.deviation;
}

}  // namespace

BoxUncertaintyReport xm_uncertainty_report(const BoxWavefunction& f,
                                           const MomentumExtension& ext) {
  require_symmetric_normalized(f);
  BoxUncertaintyReport report;

  const DeviationStats x = deviation_of(f, xm_apply(f));
  report.delta_x = x.deviation;
  fill_momentum_stats(f, ext, report);

  const Complex comm = xm_commutator_expectation(f, ext.hbar);
  report.commutator_defined = true;
  report.bound = 0.5 * std::abs(comm);
  report.bound_formula = BoundFormula::xm_boundary_formula;

  const CommutatorExpectation canonical =
      commutator_expectation_canonical(f, ext);
  if (!canonical.defined) {
    if (!report.notes.empty()) report.notes += "; ";
    report.notes += "canonical commutator expectation undefined (offending " +
                    canonical.offending_factor +
                    "); boundary formula used instead";
  }
  if (!report.notes.empty()) report.notes += "; ";
  report.notes +=
      "bound = (1/2)|boundary formula|; an unhalved variant of the same "
      "expression equals 2*bound";
  return report;
}

BoxUncertaintyReport canonical_uncertainty_report(const BoxWavefunction& f,
                                                  const MomentumExtension& ext) {
  require_normalized(f);
  BoxUncertaintyReport report;
  const DeviationStats x = deviation_of(f, apply_position(f));
  report.delta_x = x.deviation;
  fill_momentum_stats(f, ext, report);

  const CommutatorExpectation canonical =
      commutator_expectation_canonical(f, ext);
  report.commutator_defined = canonical.defined;
  if (canonical.defined) {
    report.bound = 0.5 * std::abs(canonical.value);
    report.bound_formula = BoundFormula::canonical_half_hbar;
  } else {
    report.bound_formula = BoundFormula::undefined;
    if (!report.notes.empty()) report.notes += "; ";
    report.notes = "commutator expectation undefined (offending " +
                   canonical.offending_factor + "); no bound applies";
  }
  return report;
}

std::string to_string(BoundFormula formula) {
  switch (formula) {
    case BoundFormula::canonical_half_hbar:
      return "canonical_half_hbar";
    case BoundFormula::xm_boundary_formula:
      return "xm_boundary_formula";
    case BoundFormula::undefined:
      return "undefined";
  }
  return "undefined";
}

BoxWavefunction random_trig_state(const BoxInterval& interval, Rng& rng,
                                  int max_mode, WallConstraint constraint) {
  if (max_mode < 1) throw Error("random state needs max_mode >= 1");
  const double l = interval.length();

  if (constraint == WallConstraint::unit_modulus) {
    // (1/sqrt(l)) e^{i g(x)} with a real random trig phase g; the modulus is
    // 1/sqrt(l) everywhere, so the state is normalized exactly.
    std::vector<double> amp(max_mode), phase(max_mode);
    for (int m = 0; m < max_mode; ++m) {
      amp[m] = rng.uniform(-1.0, 1.0);
      phase[m] = rng.uniform(0.0, kTwoPi);
    }
    std::vector<Complex> samples(kDefaultGridSize);
    for (int i = 0; i < kDefaultGridSize; ++i) {
      const double s = grid_x(interval, kDefaultGridSize, i) - interval.a;
      double g = 0.0;
      for (int m = 0; m < max_mode; ++m) {
        g += amp[m] * std::sin((m + 1) * M_PI * s / l + phase[m]);
      }
      samples[i] = std::exp(kI * g) / std::sqrt(l);
    }
    return BoxWavefunction::from_grid(interval, std::move(samples));
  }

  std::vector<ClosedFormTerm> terms;
  auto add_sin = [&](int mode, Complex coeff) {
    // sin(k (x - a)) in exponential terms
    const double k = mode * M_PI / l;
    const Complex half_over_i = coeff / (2.0 * kI);
    terms.push_back(ClosedFormTerm{half_over_i * std::exp(-kI * (k * interval.a)),
                                   0, k});
    terms.push_back(ClosedFormTerm{-half_over_i * std::exp(kI * (k * interval.a)),
                                   0, -k});
  };
  auto add_cos = [&](int mode, Complex coeff) {
    const double k = mode * M_PI / l;
    terms.push_back(ClosedFormTerm{0.5 * coeff * std::exp(-kI * (k * interval.a)),
                                   0, k});
    terms.push_back(ClosedFormTerm{0.5 * coeff * std::exp(kI * (k * interval.a)),
                                   0, -k});
  };

  if (constraint == WallConstraint::vanishing) {
    for (int m = 1; m <= max_mode; ++m) {
      add_sin(m, rng.complex_normal());
    }
  } else {
    for (int m = 0; m <= max_mode; ++m) {
      add_cos(m, rng.complex_normal());
      if (m >= 1) add_sin(m, rng.complex_normal());
    }
  }
  return BoxWavefunction::from_closed_form(interval, ClosedForm(std::move(terms)))
      .normalized();
}

}  // namespace uncert::box
