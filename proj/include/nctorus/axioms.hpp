#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nctorus/hochschild.hpp"
#include "nctorus/linalg.hpp"
#include "nctorus/triple.hpp"

namespace nct {

struct NamedValue {
  std::string name;
  cplx value;
};

struct VerificationReport {
  std::string check;
  bool pass = false;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::vector<NamedValue> constants;
  std::size_t interior_sites = 0;
  std::size_t required_sites = 0;  // 0 when no coverage rule applies
  std::string note;

  void finish();  // pass = residual <= tolerance and coverage met
};

// (2M - 3)^n, the minimum interior coverage for a check to count.
std::size_t required_interior(const TruncatedLattice& lat);

VerificationReport check_zeroth_order(const AssembledTriple& t, const IntVector& x, const IntVector& y,
                                      double tol = 1e-10);
VerificationReport check_first_order(const AssembledTriple& t, const IntVector& x, const IntVector& y,
                                     double tol = 1e-10);
// All x, y with sup-norm <= radius; one report each for the zeroth- and first-order conditions.
std::vector<VerificationReport> check_order_conditions(const AssembledTriple& t, int radius, double tol = 1e-10);

VerificationReport check_equivariance(const AssembledTriple& t, double tol = 1e-12);
VerificationReport check_signs(const AssembledTriple& t, double tol = 1e-11);

struct HochschildIdentity {
  VerificationReport report;
  ComplexMatrix representative;
  cplx kappa;
};

// pi_D(c_n) proportional to Gamma (even n) or Id (odd n).
HochschildIdentity check_hochschild(const AssembledTriple& t, double tol = 1e-10);

double spectral_dimension(const std::vector<double>& spectrum, double lo = 0.25, double hi = 0.5,
                          double kernel_tol = 1e-8);
double spectral_dimension(const AssembledTriple& t, double lo = 0.25, double hi = 0.5, double kernel_tol = 1e-8);

// Axis directions first, then Halton points pushed through Box-Muller.
std::vector<RealVector> sphere_samples(int n, std::size_t count, std::uint64_t seed);

struct PencilResult {
  double min_singular = 0.0;
  RealVector argmin;
};

PencilResult pencil_minimum(const std::vector<ComplexMatrix>& mats, std::size_t samples, std::uint64_t seed);
VerificationReport check_pencil(const std::vector<ComplexMatrix>& mats, std::size_t samples = 4096,
                                std::uint64_t seed = 0, double threshold = 1e-6);

struct DirichletResult {
  long q = 0;
  std::vector<long> p;
  double error = 0.0;
  bool bound_met = false;
};

DirichletResult dirichlet_approx(const RealVector& a, long N);

}  // namespace nct
