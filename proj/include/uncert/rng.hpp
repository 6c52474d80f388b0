#ifndef UNCERT_RNG_HPP
#define UNCERT_RNG_HPP

#include <complex>
#include <cmath>
#include <cstdint>
#include <random>

namespace uncert {

/// Deterministic random source. mt19937_64 output is bit-specified by the
/// standard; the std:: distributions are not, so uniforms are derived from
/// the raw engine bits to keep seeded runs reproducible everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  std::complex<double> complex_uniform(double lo, double hi) {
    const double re = uniform(lo, hi);
    const double im = uniform(lo, hi);
    return {re, im};
  }

  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace uncert

#endif  // UNCERT_RNG_HPP
