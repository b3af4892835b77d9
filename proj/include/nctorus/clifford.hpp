#pragma once

#include <optional>
#include <vector>

#include "nctorus/linalg.hpp"

namespace nct {

constexpr int kMaxDimension = 8;

struct SignTriple {
  int eps_J = 1;
  int eps_D = 1;
  std::optional<int> eps_Gamma;  // even n only
};

SignTriple sign_table(int n);

struct CliffordRep {
  int n = 0;
  std::vector<ComplexMatrix> generators;  // Hermitian, square to Id
  ComplexMatrix grading;                  // empty for odd n
  ComplexMatrix reality;                  // Lambda
  SignTriple signs;

  std::size_t spinor_dim() const { return generators.empty() ? 1 : generators.front().rows(); }
};

// Hermitian generators of Cl_{n,0} and anti-Hermitian generators of Cl_{0,n}
// built from the 2x2 base blocks by the tensor recursion.
std::vector<ComplexMatrix> positive_generators(int n);
std::vector<ComplexMatrix> negative_generators(int n);

CliffordRep build_generators(int n);
ComplexMatrix build_grading(const CliffordRep& rep);
ComplexMatrix build_reality(int n);

struct RealitySpace {
  int dimension = 0;
  std::vector<ComplexMatrix> basis;
};

RealitySpace reality_solution_space(const CliffordRep& rep);

// Largest violation of the generator, grading and reality invariants.
double rep_invariant_residual(const CliffordRep& rep);

}  // namespace nct
