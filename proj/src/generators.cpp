#include "uncert/generators.hpp"

namespace uncert {

namespace {

const Complex kI{0.0, 1.0};

ComplexMatrix make_sigma_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1,  //
      1, 0;
  return m;
}

ComplexMatrix make_sigma_y() {
  ComplexMatrix m(2, 2);
  m << 0, -kI,  //
      kI, 0;
  return m;
}

ComplexMatrix make_sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0,  //
      0, -1;
  return m;
}

ComplexMatrix make_lambda3() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 1;
  m(1, 1) = -1;
  return m;
}

ComplexMatrix make_lambda4() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 2) = 1;
  m(2, 0) = 1;
  return m;
}

ComplexMatrix make_lambda5() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 2) = kI;
  m(2, 0) = -kI;
  return m;
}

}  // namespace

GeneratorCatalog::GeneratorCatalog()
    : sigma_x(make_sigma_x()),
      sigma_y(make_sigma_y()),
      sigma_z(make_sigma_z()),
      lambda3(make_lambda3()),
      lambda4(make_lambda4()),
      lambda5(make_lambda5()) {}

const GeneratorCatalog& catalog() {
  static const GeneratorCatalog instance;
  return instance;
}

}  // namespace uncert
