#ifndef UNCERT_GENERATORS_HPP
#define UNCERT_GENERATORS_HPP

#include "uncert/observable.hpp"

namespace uncert {

/// Fixed matrix catalog used by the degenerate-bound examples: the three
/// Pauli matrices and the Gell-Mann triple (lambda3, lambda4, lambda5).
///
/// lambda5 is stored with entry (0,2) = +i and (2,0) = -i, which is the
/// negative of the common Gell-Mann convention; with this sign
/// [lambda3, lambda4] = -i*lambda5.
struct GeneratorCatalog {
  HermitianOperator sigma_x;
  HermitianOperator sigma_y;
  HermitianOperator sigma_z;
  HermitianOperator lambda3;
  HermitianOperator lambda4;
  HermitianOperator lambda5;

  GeneratorCatalog();
};

const GeneratorCatalog& catalog();

}  // namespace uncert

#endif  // UNCERT_GENERATORS_HPP
