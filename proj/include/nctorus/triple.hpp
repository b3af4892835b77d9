#pragma once

#include <cstddef>
#include <vector>

#include "nctorus/clifford.hpp"
#include "nctorus/linalg.hpp"
#include "nctorus/torus.hpp"

namespace nct {

// Row-major n x n matrix whose columns are tau^1..tau^n.
struct TauMatrix {
  int n = 0;
  RealVector entries;

  static TauMatrix identity(int n);
  double operator()(int i, int j) const { return entries[static_cast<std::size_t>(i * n + j)]; }
  RealVector column(int j) const;
  double det() const;
};

struct TripleConfig {
  int n = 2;
  ThetaMatrix theta;
  SpinStructure eps;
  TauMatrix tau;
  ComplexMatrix C;  // empty means 0
  int cutoff = 4;
};

struct CSpace {
  int dimension = 0;
  std::vector<ComplexMatrix> basis;  // orthonormal for Re tr(A^dagger B)
};

CSpace solve_C_space(int n);
// Distance from C to its projection on the space.
double c_space_residual(const CSpace& space, const ComplexMatrix& c);

class AssembledTriple {
 public:
  explicit AssembledTriple(const TripleConfig& config);

  int n() const { return config_.n; }
  const TripleConfig& config() const { return config_; }
  const TruncatedLattice& lattice() const { return lattice_; }
  const CliffordRep& rep() const { return rep_; }
  const AMatrix& A() const { return a_; }
  const ComplexMatrix& C() const { return c_; }
  double c_membership_residual() const { return c_residual_; }

  ComplexMatrix dirac_block(const Site& s) const;
  LatticeOperator dirac() const;
  LatticeOperator reality() const;  // J, antilinear
  LatticeOperator grading() const;  // even n only
  LatticeOperator u(const IntVector& x) const { return u_action(x, lattice_, a_); }
  LatticeOperator u_op(const IntVector& x) const { return u_opposite_action(x, lattice_, a_); }

 private:
  TripleConfig config_;
  TruncatedLattice lattice_;
  CliffordRep rep_;
  AMatrix a_;
  ComplexMatrix c_;
  double c_residual_ = 0.0;
  struct SparseEntry {
    std::ptrdiff_t generator;
    std::size_t index;
    cplx value;
  };
  std::vector<SparseEntry> sparse_gens_;  // nonzero generator entries, for fast Dirac blocks
};

AssembledTriple assemble(const TripleConfig& config);
ComplexMatrix dirac_block(const AssembledTriple& t, const Site& s);
std::vector<double> full_spectrum(const AssembledTriple& t);
std::size_t kernel_dimension(const std::vector<double>& spectrum, double tol);
std::size_t kernel_dimension(const AssembledTriple& t, double tol);
std::vector<cplx> apply_J(const AssembledTriple& t, const std::vector<cplx>& v);

}  // namespace nct
