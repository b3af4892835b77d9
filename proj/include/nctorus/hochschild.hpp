#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "nctorus/linalg.hpp"
#include "nctorus/torus.hpp"
#include "nctorus/triple.hpp"

namespace nct {

// One term coeff * e(1/2 sum_{k<l} phase2_kl theta_kl) * (U_{x0} (x) U_y^o) (x) U_{x1} (x) ... (x) U_{xk}.
// phase2 holds doubled coefficients, indexed like ThetaMatrix::upper().
struct ChainTerm {
  cplx coeff{1.0, 0.0};
  std::optional<IntVector> opposite;
  std::vector<IntVector> factors;
  std::vector<int> phase2;
};

class HochschildChain {
 public:
  explicit HochschildChain(int n) : n_(n) {}

  int n() const { return n_; }
  std::vector<ChainTerm> terms() const;  // sorted by key
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  int degree() const;  // k, or -1 when empty

  void add(ChainTerm term);  // merges into normal form
  HochschildChain& operator+=(const HochschildChain& other);
  HochschildChain scaled(cplx s) const;

 private:
  using Key = std::tuple<bool, IntVector, std::vector<IntVector>, std::vector<int>>;
  int n_;
  std::map<Key, cplx> terms_;
};

// U_a U_b = e(1/2 a.theta b) U_{a+b}; returns the doubled exponent increment.
std::vector<int> product_phase2(const IntVector& a, const IntVector& b);
// Monomial product of the list, as (sum, doubled exponent).
std::pair<IntVector, std::vector<int>> monomial_product(const std::vector<IntVector>& xs);
cplx term_phase(const ChainTerm& t, const ThetaMatrix& theta);

HochschildChain boundary(const HochschildChain& chain);
HochschildChain build_cycle(int n);

struct Representative {
  ComplexMatrix block;
  double residual = 0.0;  // max site-to-site deviation
  std::size_t interior_sites = 0;
};

Representative hochschild_representative(const AssembledTriple& t, const HochschildChain& chain);

}  // namespace nct
