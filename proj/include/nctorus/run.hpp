#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nctorus/triple.hpp"

namespace nct {

struct Tolerances {
  double signs = 1e-11;
  double equivariance = 1e-12;
  double order = 1e-10;
  double hochschild = 1e-10;
  double c_space = 1e-10;
  double kernel = 1e-8;

  void set(const std::string& name, double value);
};

struct RunConfig {
  TripleConfig triple;
  Tolerances tol;
  std::uint64_t seed = 0;
  int pair_radius = 2;
};

// theta_kl = frac(sqrt(p)) over successive primes, so theta_12 = sqrt(2) - 1.
RealVector default_theta(int n);

// Throws Error(InvalidConfig) naming the offending field.
RunConfig parse_config(const std::string& json_text);
std::string config_json(const RunConfig& cfg);

std::string verify_json(const RunConfig& cfg, bool& overall);
std::string spectrum_summary_json(const AssembledTriple& t, const std::vector<double>& spectrum, double kernel_tol);
std::string orbits_json(int n);
std::vector<ComplexMatrix> parse_matrices(const std::string& json_text);
std::string clifford_check_json(const std::vector<ComplexMatrix>& mats, std::uint64_t seed, bool& overall);
std::string c_space_json(int n);

// Shortest round-trip decimal, independent of the C locale.
std::string format_double(double x);

}  // namespace nct
