#include "uncert/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace uncert {

std::string to_string(SearchObjective objective) {
  switch (objective) {
    case SearchObjective::product:
      return "product";
    case SearchObjective::bound:
      return "bound";
    case SearchObjective::gap:
      return "gap";
  }
  return "unknown";
}

SearchObjective search_objective_from_string(const std::string& name) {
  if (name == "product") return SearchObjective::product;
  if (name == "bound") return SearchObjective::bound;
  if (name == "gap") return SearchObjective::gap;
  throw Error("unknown search objective: " + name);
}

std::string FamilyDescriptor::label() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::real_coefficients:
      out << "real amplitudes";
      break;
    case Kind::proportional_last_to_first:
      out << "last amplitude = beta * first, beta real in [" << beta_min
          << ", " << beta_max << "]";
      break;
    case Kind::unconstrained:
      out << "unconstrained complex amplitudes";
      break;
  }
  out << ", dim " << dim << ", amplitude range [" << amplitude_min << ", "
      << amplitude_max << "]";
  return out.str();
}

int FamilyDescriptor::free_real_parameters() const {
  switch (kind) {
    case Kind::real_coefficients:
      return dim;
    case Kind::proportional_last_to_first:
      return 2 * (dim - 1) + 1;  // complex leading amplitudes plus beta
    case Kind::unconstrained:
      return 2 * dim;
  }
  return 2 * dim;
}

int FamilyDescriptor::default_samples() const {
  const int pairs = (free_real_parameters() + 1) / 2;
  const long raw = 512L * pairs;
  return static_cast<int>(std::min(raw, 100000L));
}

ComplexVector FamilyDescriptor::draw(Rng& rng) const {
  ComplexVector v(dim);
  switch (kind) {
    case Kind::real_coefficients:
      for (int i = 0; i < dim; ++i) {
        v[i] = Complex(rng.uniform(amplitude_min, amplitude_max), 0.0);
      }
      break;
    case Kind::proportional_last_to_first: {
      for (int i = 0; i + 1 < dim; ++i) {
        v[i] = rng.complex_uniform(amplitude_min, amplitude_max);
      }
      const double beta = rng.uniform(beta_min, beta_max);
      v[dim - 1] = beta * v[0];
      break;
    }
    case Kind::unconstrained:
      for (int i = 0; i < dim; ++i) {
        v[i] = rng.complex_uniform(amplitude_min, amplitude_max);
      }
      break;
  }
  return v;
}

double pauli_bound_closed_form(Complex a, Complex b) {
  const double n2 = std::norm(a) + std::norm(b);
  if (!(n2 > 1e-300)) {
    throw ZeroVector("amplitudes (a, b) must not both vanish");
  }
  return std::abs(std::norm(a) - std::norm(b)) / n2;
}

double gellmann_bound_closed_form(Complex a, Complex b, Complex c) {
  const double n2 = std::norm(a) + std::norm(b) + std::norm(c);
  if (!(n2 > 1e-300)) {
    throw ZeroVector("amplitudes (a, b, c) must not all vanish");
  }
  return std::abs(std::imag(std::conj(a) * c)) / n2;
}

double objective_value(const HermitianOperator& a, const HermitianOperator& b,
                       SearchObjective objective, const StateVector& phi) {
  const UncertaintyReport report = robertson_report(a, b, phi);
  switch (objective) {
    case SearchObjective::product:
      return report.product;
    case SearchObjective::bound:
      return report.bound;
    case SearchObjective::gap:
      return report.gap;
  }
  return report.product;
}

FamilyVerdict classify_family(const FamilyDescriptor& family,
                              const HermitianOperator& a,
                              const HermitianOperator& b, std::uint64_t seed,
                              int samples) {
  if (a.dim() != family.dim || b.dim() != family.dim) {
    std::ostringstream msg;
    msg << "family dimension " << family.dim
        << " does not match operator dimensions " << a.dim() << ", "
        << b.dim();
    throw DimensionMismatch(msg.str());
  }
  if (samples < 0) samples = family.default_samples();
  if (samples < 1 && family.probes.empty()) {
    throw EmptyFamily("family scan needs at least one sample or probe");
  }

  constexpr int kMaxStoredExemplars = 16;

  FamilyVerdict verdict;
  verdict.family_descriptor = family.label();
  if (family.kind == FamilyDescriptor::Kind::proportional_last_to_first &&
      family.beta_min <= 0.0 && family.beta_max >= 0.0) {
    verdict.notes =
        "proportionality range includes beta = 0, where the bound vanishes "
        "as well";
  }

  Rng rng(seed);
  bool any_counter = false;
  verdict.min_counter_bound = 0.0;

  auto consider = [&](const ComplexVector& raw) {
    StateVector state = StateVector::normalized(raw);
    const double bound = robertson_report(a, b, state).bound;
    if (bound <= tol::zero_bound) {
      verdict.witness_count += 1;
      verdict.max_witness_bound = std::max(verdict.max_witness_bound, bound);
      if (static_cast<int>(verdict.witness_states.size()) <
          kMaxStoredExemplars) {
        verdict.witness_states.push_back(std::move(state));
      }
    } else {
      verdict.counter_count += 1;
      verdict.min_counter_bound = any_counter
                                      ? std::min(verdict.min_counter_bound, bound)
                                      : bound;
      any_counter = true;
      if (static_cast<int>(verdict.counter_states.size()) <
          kMaxStoredExemplars) {
        verdict.counter_states.push_back(std::move(state));
      }
    }
  };

  for (const ComplexVector& probe : family.probes) {
    if (probe.size() != family.dim) {
      throw DimensionMismatch("family probe has wrong dimension");
    }
    consider(probe);
  }
  for (int i = 0; i < samples; ++i) {
    consider(family.draw(rng));
  }

  verdict.bound_zero_on_family = verdict.counter_count == 0;
  return verdict;
}

namespace {

// Nelder-Mead over the 2n real coordinates of an unnormalized complex vector;
// the objective normalizes internally, so the search is effectively on the
// state sphere. Deterministic: ties in the simplex ordering are broken by
// insertion index.
class SimplexSearch {
 public:
  using Objective = std::function<double(const std::vector<double>&)>;

  SimplexSearch(Objective f, int n) : f_(std::move(f)), n_(n) {}

  struct Outcome {
    std::vector<double> best_point;
    double best_value = 0.0;
    long iterations = 0;
  };

  Outcome run(const std::vector<double>& start, double step, long max_iter) {
    const int m = n_ + 1;
    std::vector<std::vector<double>> pts(m, start);
    std::vector<double> vals(m);
    for (int i = 1; i < m; ++i) pts[i][i - 1] += step;
    for (int i = 0; i < m; ++i) vals[i] = f_(pts[i]);

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    auto sort_order = [&]() {
      std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        if (vals[lhs] != vals[rhs]) return vals[lhs] < vals[rhs];
        return lhs < rhs;
      });
    };

    Outcome outcome;
    long iter = 0;
    for (; iter < max_iter; ++iter) {
      sort_order();
      const int best = order[0];
      const int worst = order[m - 1];
      const int second_worst = order[m - 2];

      if (converged(pts, vals, order)) break;

      std::vector<double> centroid(n_, 0.0);
      for (int i = 0; i < m; ++i) {
        if (i == worst) continue;
        for (int k = 0; k < n_; ++k) centroid[k] += pts[i][k];
      }
      for (int k = 0; k < n_; ++k) centroid[k] /= n_;

      auto blend = [&](double t) {
        std::vector<double> p(n_);
        for (int k = 0; k < n_; ++k) {
          p[k] = centroid[k] + t * (centroid[k] - pts[worst][k]);
        }
        return p;
      };

      const std::vector<double> reflected = blend(1.0);
      const double f_reflected = f_(reflected);
      if (f_reflected < vals[best]) {
        const std::vector<double> expanded = blend(2.0);
        const double f_expanded = f_(expanded);
        if (f_expanded < f_reflected) {
          pts[worst] = expanded;
          vals[worst] = f_expanded;
        } else {
          pts[worst] = reflected;
          vals[worst] = f_reflected;
        }
        continue;
      }
      if (f_reflected < vals[second_worst]) {
        pts[worst] = reflected;
        vals[worst] = f_reflected;
        continue;
      }
      const std::vector<double> contracted = blend(-0.5);
      const double f_contracted = f_(contracted);
      if (f_contracted < vals[worst]) {
        pts[worst] = contracted;
        vals[worst] = f_contracted;
        continue;
      }
      // Shrink toward the best vertex.
      for (int i = 0; i < m; ++i) {
        if (i == best) continue;
        for (int k = 0; k < n_; ++k) {
          pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
        }
        vals[i] = f_(pts[i]);
      }
    }

    sort_order();
    outcome.best_point = pts[order[0]];
    outcome.best_value = vals[order[0]];
    outcome.iterations = iter;
    return outcome;
  }

 private:
  bool converged(const std::vector<std::vector<double>>& pts,
                 const std::vector<double>& vals,
                 const std::vector<int>& order) const {
    const double f_spread = vals[order.back()] - vals[order.front()];
    double diameter = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      double d = 0.0;
      for (int k = 0; k < n_; ++k) {
        const double diff = pts[i][k] - pts[0][k];
        d += diff * diff;
      }
      diameter = std::max(diameter, std::sqrt(d));
    }
    return f_spread <= 1e-14 * std::max(1.0, std::abs(vals[order.front()])) &&
           diameter <= 1e-9;
  }

  Objective f_;
  int n_;
};

ComplexVector point_to_amplitudes(const std::vector<double>& point, int dim) {
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = Complex(point[2 * i], point[2 * i + 1]);
  }
  return v;
}

}  // namespace

SearchResult minimize_objective(const HermitianOperator& a,
                                const HermitianOperator& b,
                                SearchObjective objective, std::uint64_t seed,
                                int restarts) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("search requires operators of equal dimension");
  }
  if (restarts < 1) {
    throw Error("search requires at least one restart");
  }

  const int dim = a.dim();
  const int n = 2 * dim;
  Rng rng(seed);

  auto f = [&](const std::vector<double>& point) {
    const ComplexVector raw = point_to_amplitudes(point, dim);
    const double norm = raw.norm();
    if (!(norm > 1e-8)) {
      // Push the search away from the singular origin.
      return 1e6 * (1.0 - norm);
    }
    return objective_value(a, b, objective, StateVector::normalized(raw));
  };

  SimplexSearch search(f, n);

  bool have_best = false;
  std::vector<double> best_point;
  double best_value = 0.0;
  long iterations = 0;

  for (int r = 0; r < restarts; ++r) {
    std::vector<double> start(n);
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (int k = 0; k < n; ++k) {
        start[k] = rng.uniform(-1.0, 1.0);
        norm2 += start[k] * start[k];
      }
    } while (norm2 < 0.09);

    SimplexSearch::Outcome out = search.run(start, 0.35, 4000);
    // A second pass from the located minimum with a small simplex
    // polishes the last digits.
    out = search.run(out.best_point, 1e-4, 2000);
    iterations += out.iterations;
    if (!have_best || out.best_value < best_value) {
      have_best = true;
      best_value = out.best_value;
      best_point = out.best_point;
    }
  }

  SearchResult result{
      StateVector::normalized(point_to_amplitudes(best_point, dim)), 0.0,
      objective, iterations, seed};
  result.best_value = objective_value(a, b, objective, result.best_state);
  return result;
}

}  // namespace uncert
