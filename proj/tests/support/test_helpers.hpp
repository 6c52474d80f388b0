#ifndef UNCERT_TEST_HELPERS_HPP
#define UNCERT_TEST_HELPERS_HPP

#include <array>
#include <cmath>
#include <vector>

#include "uncert/explorer.hpp"
#include "uncert/observable.hpp"
#include "uncert/rng.hpp"

namespace testsupport {

inline uncert::HermitianOperator random_hermitian(int dim, uncert::Rng& rng) {
  uncert::ComplexMatrix raw(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      raw(i, j) = rng.complex_normal();
    }
  }
  return uncert::HermitianOperator(0.5 * (raw + raw.adjoint()));
}

inline uncert::StateVector random_state(int dim, uncert::Rng& rng) {
  uncert::ComplexVector raw(dim);
  for (int i = 0; i < dim; ++i) raw[i] = rng.complex_normal();
  return uncert::StateVector::normalized(raw);
}

namespace detail {

using Cx = std::complex<double>;

/// Raw-arithmetic objective for the sphere grid: no library calls, so the
/// oracle is independent of the implementation path it validates.
template <int N>
struct RawObjective {
  std::array<Cx, N * N> a{};
  std::array<Cx, N * N> b{};

  static RawObjective from(const uncert::HermitianOperator& oa,
                           const uncert::HermitianOperator& ob) {
    RawObjective out;
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        out.a[i * N + j] = oa.matrix()(i, j);
        out.b[i * N + j] = ob.matrix()(i, j);
      }
    }
    return out;
  }

  static void matvec(const std::array<Cx, N * N>& m,
                     const std::array<Cx, N>& v, std::array<Cx, N>& out) {
    for (int i = 0; i < N; ++i) {
      Cx acc{0.0, 0.0};
      for (int j = 0; j < N; ++j) acc += m[i * N + j] * v[j];
      out[i] = acc;
    }
  }

  static Cx dot(const std::array<Cx, N>& x, const std::array<Cx, N>& y) {
    Cx acc{0.0, 0.0};
    for (int i = 0; i < N; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
  }

  double eval(uncert::SearchObjective objective,
              const std::array<Cx, N>& v) const {
    std::array<Cx, N> av, bv, abv, bav;
    matvec(a, v, av);
    matvec(b, v, bv);
    const double mean_a = dot(v, av).real();
    const double mean_b = dot(v, bv).real();
    const double var_a = std::max(dot(av, av).real() - mean_a * mean_a, 0.0);
    const double var_b = std::max(dot(bv, bv).real() - mean_b * mean_b, 0.0);
    const double product = std::sqrt(var_a) * std::sqrt(var_b);
    if (objective == uncert::SearchObjective::product) return product;
    matvec(a, bv, abv);
    matvec(b, av, bav);
    const double bound = 0.5 * std::abs(dot(v, abv) - dot(v, bav));
    if (objective == uncert::SearchObjective::bound) return bound;
    return product - bound;
  }
};

inline std::array<Cx, 2> sphere_point_dim2(double t, double phi) {
  return {Cx{std::cos(t), 0.0},
          std::sin(t) * std::exp(Cx{0.0, phi})};
}

inline std::array<Cx, 3> sphere_point_dim3(double t1, double t2, double phi1,
                                           double phi2) {
  return {Cx{std::cos(t1), 0.0},
          std::sin(t1) * std::cos(t2) * std::exp(Cx{0.0, phi1}),
          std::sin(t1) * std::sin(t2) * std::exp(Cx{0.0, phi2})};
}

}  // namespace detail

/// Dense hierarchically-refined grid minimum over the state sphere for dim 2
/// or 3. The global phase is factored out, so the grid covers magnitudes and
/// relative phases. Each level re-grids a window of four cells around the
/// best point of the previous one, which keeps the minimizer contained while
/// the spacing shrinks geometrically.
inline double sphere_grid_minimum(const uncert::HermitianOperator& a,
                                  const uncert::HermitianOperator& b,
                                  uncert::SearchObjective objective,
                                  int base = 24, int levels = 10) {
  const int dim = a.dim();
  const double half_pi = 0.5 * M_PI;
  const double two_pi = 2.0 * M_PI;

  if (dim == 2) {
    const auto raw = detail::RawObjective<2>::from(a, b);
    const int n = base * 4;
    double centers[2] = {half_pi / 2.0, M_PI};
    double widths[2] = {half_pi, two_pi};
    double best = 0.0;
    bool first = true;
    for (int level = 0; level < levels; ++level) {
      double arg_best[2] = {centers[0], centers[1]};
      for (int i = 0; i <= n; ++i) {
        const double t = centers[0] - 0.5 * widths[0] + widths[0] * i / n;
        for (int j = 0; j <= n; ++j) {
          const double phi = centers[1] - 0.5 * widths[1] + widths[1] * j / n;
          const double value =
              raw.eval(objective, detail::sphere_point_dim2(t, phi));
          if (first || value < best) {
            first = false;
            best = value;
            arg_best[0] = t;
            arg_best[1] = phi;
          }
        }
      }
      for (int k = 0; k < 2; ++k) {
        const double h = widths[k] / n;
        centers[k] = arg_best[k];
        widths[k] = 4.0 * h;
      }
    }
    return best;
  }

  if (dim != 3) throw uncert::Error("sphere grid supports dims 2 and 3 only");

  const auto raw = detail::RawObjective<3>::from(a, b);
  double centers[4] = {half_pi / 2.0, half_pi / 2.0, M_PI, M_PI};
  double widths[4] = {half_pi, half_pi, two_pi, two_pi};
  double best = 0.0;
  bool first = true;
  for (int level = 0; level < levels; ++level) {
    double arg_best[4] = {centers[0], centers[1], centers[2], centers[3]};
    for (int i0 = 0; i0 <= base; ++i0) {
      const double t1 = centers[0] - 0.5 * widths[0] + widths[0] * i0 / base;
      for (int i1 = 0; i1 <= base; ++i1) {
        const double t2 = centers[1] - 0.5 * widths[1] + widths[1] * i1 / base;
        for (int i2 = 0; i2 <= base; ++i2) {
          const double p1 =
              centers[2] - 0.5 * widths[2] + widths[2] * i2 / base;
          for (int i3 = 0; i3 <= base; ++i3) {
            const double p2 =
                centers[3] - 0.5 * widths[3] + widths[3] * i3 / base;
            const double value = raw.eval(
                objective, detail::sphere_point_dim3(t1, t2, p1, p2));
            if (first || value < best) {
              first = false;
              best = value;
              arg_best[0] = t1;
              arg_best[1] = t2;
              arg_best[2] = p1;
              arg_best[3] = p2;
            }
          }
        }
      }
    }
    for (int k = 0; k < 4; ++k) {
      const double h = widths[k] / base;
      centers[k] = arg_best[k];
      widths[k] = 4.0 * h;
    }
  }
  return best;
}

}  // namespace testsupport

#endif  // UNCERT_TEST_HELPERS_HPP
