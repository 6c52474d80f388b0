#ifndef UNCERT_EXPLORER_HPP
#define UNCERT_EXPLORER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "uncert/observable.hpp"
#include "uncert/rng.hpp"

namespace uncert {

/// Quantity minimized over the state sphere.
enum class SearchObjective { product, bound, gap };

std::string to_string(SearchObjective objective);
SearchObjective search_objective_from_string(const std::string& name);

/// Declarative description of a parametric state family, so that scenario
/// files can express families without code callbacks.
struct FamilyDescriptor {
  enum class Kind {
    /// All amplitudes real, drawn uniformly from the amplitude range.
    real_coefficients,
    /// Complex amplitudes with the last amplitude tied to the first by a
    /// real factor beta (beta = 0 included).
    proportional_last_to_first,
    /// Unconstrained complex amplitudes.
    unconstrained
  };

  Kind kind = Kind::unconstrained;
  int dim = 3;
  double amplitude_min = -1.0;
  double amplitude_max = 1.0;
  double beta_min = -2.0;  // proportional_last_to_first only
  double beta_max = 2.0;
  /// Fixed amplitude vectors evaluated before any random draw.
  std::vector<ComplexVector> probes;

  std::string label() const;
  int free_real_parameters() const;
  /// 512 samples per free parameter pair, capped at 1e5.
  int default_samples() const;
  /// One raw (unnormalized) amplitude draw.
  ComplexVector draw(Rng& rng) const;
};

struct FamilyVerdict {
  std::string family_descriptor;
  bool bound_zero_on_family = false;
  std::vector<StateVector> witness_states;  // exemplars, capped
  std::vector<StateVector> counter_states;  // exemplars, capped
  long witness_count = 0;
  long counter_count = 0;
  double max_witness_bound = 0.0;
  double min_counter_bound = 0.0;  // 0 when no counter state was found
  std::string notes;
};

struct SearchResult {
  StateVector best_state;
  double best_value = 0.0;
  SearchObjective objective = SearchObjective::product;
  long iterations = 0;
  std::uint64_t seed = 0;
};

/// Lower bound of the two-level pair (sigma_x, sigma_y) for the state with
/// raw amplitudes (a, b): N^2 * ||a|^2 - |b|^2| with N^2 = 1/(|a|^2+|b|^2).
double pauli_bound_closed_form(Complex a, Complex b);

/// Lower bound of the (lambda3, lambda4) pair for raw amplitudes (a, b, c):
/// N^2 * |Im(conj(a) c)|. Zero exactly when Im(conj(a) c) = 0, which covers
/// both all-real amplitudes and c = beta*a with real beta.
double gellmann_bound_closed_form(Complex a, Complex b, Complex c);

/// Evaluates the chosen objective for the pair (A, B) in the given state.
double objective_value(const HermitianOperator& a, const HermitianOperator& b,
                       SearchObjective objective, const StateVector& phi);

/// Samples the family (probes first, then seeded random draws), evaluates the
/// generic lower bound for every sample, and classifies witnesses against
/// counter states. samples < 0 selects the descriptor default.
FamilyVerdict classify_family(const FamilyDescriptor& family,
                              const HermitianOperator& a,
                              const HermitianOperator& b, std::uint64_t seed,
                              int samples = -1);

/// Multi-start derivative-free minimization of the objective over normalized
/// states. Deterministic for fixed (seed, restarts).
SearchResult minimize_objective(const HermitianOperator& a,
                                const HermitianOperator& b,
                                SearchObjective objective, std::uint64_t seed,
                                int restarts);

}  // namespace uncert

#endif  // UNCERT_EXPLORER_HPP
