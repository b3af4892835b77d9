#include <cmath>
#include <random>

#include "doctest.h"
#include "nctorus/error.hpp"
#include "nctorus/linalg.hpp"
#include "support.hpp"

using namespace nct;
using nct::testing::I;

TEST_CASE("matrix arithmetic and adjoint") {
  const ComplexMatrix a{{1, I}, {2, 3.0 - I}};
  const ComplexMatrix b{{0, 1}, {1, 0}};
  const ComplexMatrix ab = a * b;
  CHECK(ab(0, 0) == I);
  CHECK(ab(1, 1) == cplx(2, 0));
  CHECK(a.adjoint()(0, 1) == cplx(2, 0));
  CHECK(a.adjoint()(1, 0) == -I);
  CHECK(a.trace() == cplx(4, -1));
  CHECK(max_abs_diff(a - a, ComplexMatrix(2, 2)) == 0.0);
  CHECK_THROWS_AS(a * ComplexMatrix(3, 3), Error);
}

TEST_CASE("phase is exact on quarter turns") {
  CHECK(phase(0.25) == I);
  CHECK(phase(-0.25) == -I);
  CHECK(phase(0.5) == cplx(-1, 0));
  CHECK(phase(3.0) == cplx(1, 0));
  CHECK(std::abs(phase(1.0 / 8.0) - std::polar(1.0, M_PI / 4)) < 1e-15);
  CHECK_THROWS_AS(phase(NAN), Error);
}

TEST_CASE("kron dimensions and entries") {
  const ComplexMatrix x{{0, 1}, {1, 0}}, z{{1, 0}, {0, -1}};
  const auto k = kron(x, z);
  CHECK(k.rows() == 4);
  CHECK(k(0, 2) == cplx(1, 0));
  CHECK(k(1, 3) == cplx(-1, 0));
  CHECK(k(0, 0) == cplx(0, 0));
}

TEST_CASE("Hermitian eigensolver reconstructs the matrix") {
  std::mt19937_64 rng(5);
  const auto h = nct::testing::random_hermitian(6, rng);
  const auto e = hermitian_eigen(h);
  REQUIRE(e.eigenvalues.size() == 6);
  for (std::size_t i = 1; i < 6; ++i) CHECK(e.eigenvalues[i - 1] <= e.eigenvalues[i]);
  std::vector<cplx> d(e.eigenvalues.begin(), e.eigenvalues.end());
  const auto back = e.eigenvectors * ComplexMatrix::diagonal(d) * e.eigenvectors.adjoint();
  CHECK(max_abs_diff(back, h) < 1e-12);
  CHECK(max_abs_diff(e.eigenvectors.adjoint() * e.eigenvectors, ComplexMatrix::identity(6)) < 1e-12);
  CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix{{0, 1}, {0, 0}}), Error);
}

TEST_CASE("determinant, nullspace and singular values") {
  const ComplexMatrix a{{1, 2}, {2, 4}};
  CHECK(std::abs(determinant(a)) < 1e-14);
  const auto ns = nullspace(a);
  REQUIRE(ns.cols() == 1);
  CHECK(max_abs(a * ns) < 1e-12);
  CHECK(std::abs(determinant(ComplexMatrix{{0, I}, {I, 0}}) - cplx(1, 0)) < 1e-15);
  const auto sv = singular_values(ComplexMatrix{{3, 0}, {0, -2.0 * I}});
  REQUIRE(sv.size() == 2);
  CHECK(std::abs(std::max(sv[0], sv[1]) - 3.0) < 1e-12);
  CHECK(std::abs(min_singular_value(ComplexMatrix{{3, 0}, {0, -2.0 * I}}) - 2.0) < 1e-12);
}

TEST_CASE("permutation sign and antisymmetrized product") {
  CHECK(permutation_sign({0, 1, 2}) == 1);
  CHECK(permutation_sign({1, 0, 2}) == -1);
  CHECK(permutation_sign({1, 2, 0}) == 1);
  const ComplexMatrix x{{0, 1}, {1, 0}}, y{{0, -I}, {I, 0}}, z{{1, 0}, {0, -1}};
  // For anticommuting generators the antisymmetrized sum is k! times the ordered product.
  const auto p = antisymmetrized_product({x, y, z});
  CHECK(max_abs_diff(p, 6.0 * (x * y * z)) < 1e-14);
  CHECK(max_abs_diff(x * y * z, I * ComplexMatrix::identity(2)) < 1e-15);
  CHECK(max_abs(antisymmetrized_product({x, x})) == 0.0);
}
