#pragma once

#include <cstdint>
#include <vector>

#include "nctorus/linalg.hpp"
#include "nctorus/torus.hpp"

namespace nct {

struct CliffordVerdict {
  bool is_hermitian = false;
  double hermiticity_defect = 0.0;
  bool pencil_nonsingular = false;
  double pencil_min_singular = 0.0;
  bool antisym_scalar = false;
  cplx lambda{0.0, 0.0};
  double antisym_residual = 0.0;
  bool anticommutator_form = false;
  std::vector<double> gram;  // k x k row-major; empty when the anticommutators are not scalar
  double anticommutator_residual = 0.0;
  bool overall = false;
  std::uint64_t seed = 0;
};

// Odd count: antisymmetrized product P = lambda Id.
// Even count: P = lambda G with G a Hermitian involution, lambda^2 read off from P^2.
CliffordVerdict clifford_check(const std::vector<ComplexMatrix>& mats, std::size_t samples = 4096,
                               std::uint64_t seed = 0);

struct GridMinimum {
  double min_abs_det = 0.0;
  RealVector argmin;
};

GridMinimum brute_force_pencil(const std::vector<ComplexMatrix>& mats, int grid_resolution);

// Generators of Cl_{n,0} with the eigenvalues of A_1 rescaled by 2, 1/2, 3, 1/3, ...
std::vector<ComplexMatrix> rescaled_generators(int n);

}  // namespace nct
