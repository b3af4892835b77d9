#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "nctorus/clifford.hpp"
#include "nctorus/linalg.hpp"

namespace nct {

using IntVector = std::vector<int>;
using RealVector = std::vector<double>;

// Antisymmetric theta, stored as a full n x n array.
class ThetaMatrix {
 public:
  ThetaMatrix() = default;
  // Strict upper triangle, row-major: theta_12, theta_13, ..., theta_{n-1,n}.
  static ThetaMatrix from_upper(int n, const RealVector& upper);
  static ThetaMatrix zero(int n) { return from_upper(n, RealVector(static_cast<std::size_t>(n * (n - 1) / 2), 0.0)); }

  int n() const { return n_; }
  double operator()(int i, int j) const { return e_[static_cast<std::size_t>(i * n_ + j)]; }
  RealVector upper() const;
  double form(const IntVector& x, const IntVector& y) const;  // x . theta y

 private:
  int n_ = 0;
  RealVector e_;
};

struct AMatrix {
  int n = 0;
  RealVector entries;  // row-major
  double operator()(int i, int j) const { return entries[static_cast<std::size_t>(i * n + j)]; }
};

AMatrix canonical_A(const ThetaMatrix& theta);
ThetaMatrix theta_of(const AMatrix& a);  // A - A^T

// Spin structure eps_i = bits[i] / 2.
using SpinStructure = std::vector<int>;
SpinStructure spin_from_values(const RealVector& eps);

struct Site {
  int n = 0;
  std::array<int, kMaxDimension> m{};
  bool operator==(const Site& o) const { return n == o.n && m == o.m; }
  bool operator!=(const Site& o) const { return !(*this == o); }
};

Site shifted(const Site& s, const IntVector& x);

// Sites mu = m + eps with m_i in [-M - 2 eps_i, M], so the box is symmetric under mu -> -mu.
class TruncatedLattice {
 public:
  TruncatedLattice() = default;
  TruncatedLattice(int n, SpinStructure eps, int cutoff, std::size_t spinor_mult);

  int n() const { return n_; }
  int cutoff() const { return cutoff_; }
  const SpinStructure& spin() const { return eps_; }
  RealVector epsilon() const;
  std::size_t spinor_mult() const { return spinor_; }
  std::size_t site_count() const { return count_; }
  std::size_t dimension() const { return count_ * spinor_; }

  int lower(int i) const { return -cutoff_ - eps_[static_cast<std::size_t>(i)]; }
  int upper(int) const { return cutoff_; }
  bool contains(const Site& s) const;
  std::size_t index(const Site& s) const;
  Site site(std::size_t index) const;
  double mu(const Site& s, int i) const { return s.m[static_cast<std::size_t>(i)] + 0.5 * eps_[static_cast<std::size_t>(i)]; }
  RealVector mu(const Site& s) const;
  Site negate(const Site& s) const;  // mu -> -mu
  Site from_mu_doubled(const IntVector& two_mu) const;

 private:
  int n_ = 0, cutoff_ = 0;
  SpinStructure eps_;
  std::size_t spinor_ = 1, count_ = 0;
  std::vector<std::size_t> stride_;
};

struct SiteImage {
  Site target;
  ComplexMatrix block;  // empty means identity
  cplx scalar{1.0, 0.0};
  const ComplexMatrix* shared_block = nullptr;  // used instead of block when set; must outlive the call
};

// Per-site action of a (possibly antilinear) operator; nullopt where the image leaves the box.
class LatticeOperator {
 public:
  using Action = std::function<std::optional<SiteImage>(const Site&)>;
  LatticeOperator() = default;
  LatticeOperator(Action action, bool antilinear = false) : action_(std::move(action)), antilinear_(antilinear) {}

  std::optional<SiteImage> image(const Site& s) const { return action_(s); }
  bool antilinear() const { return antilinear_; }

 private:
  Action action_;
  bool antilinear_ = false;
};

// Images of the spinor basis at one site, as columns of scale * block.
struct SiteState {
  Site site;
  ComplexMatrix block;
  cplx scale{1.0, 0.0};  // deferred scalar factor
  bool identity = false;  // block is known to be exactly the identity

  ComplexMatrix value() const { return scale * block; }
};

bool apply(const LatticeOperator& op, SiteState& state);
std::vector<cplx> apply(const LatticeOperator& op, const TruncatedLattice& lat, const std::vector<cplx>& v);

// Composable site maps for residual checks.
using SiteMap = std::function<std::optional<SiteState>(SiteState)>;
SiteMap as_map(const LatticeOperator& op);
SiteMap compose(std::vector<SiteMap> factors);  // leftmost applied last
SiteMap combine(std::vector<std::pair<cplx, SiteMap>> terms);
SiteMap commutator(const SiteMap& a, const SiteMap& b);

struct InteriorResidual {
  double residual = 0.0;
  std::size_t interior_sites = 0;
};

// max over sites where expr is defined of max|expr(Id at site)|.
InteriorResidual interior_residual(const TruncatedLattice& lat, const SiteMap& expr);

LatticeOperator u_action(const IntVector& x, const TruncatedLattice& lat, const AMatrix& a);
LatticeOperator u_opposite_action(const IntVector& x, const TruncatedLattice& lat, const AMatrix& a);
LatticeOperator derivation(int i, const TruncatedLattice& lat);
LatticeOperator identity_operator(const TruncatedLattice& lat);
// diag e(-1/2 mu.(A - A')mu), conjugating pi^A into pi^{A'} when A - A' is symmetric.
LatticeOperator representation_intertwiner(const AMatrix& a, const AMatrix& a2, const TruncatedLattice& lat);

struct ProductRelation {
  double product_residual = 0.0;      // U_x U_y - e(c x.theta y) U_{x+y}
  double commutation_residual = 0.0;  // U_x U_y - e(x.theta y) U_y U_x
  std::size_t interior_sites = 0;
};

// c = +1/2 is the coefficient realized by u_action.
ProductRelation product_relation_check(const IntVector& x, const IntVector& y, const TruncatedLattice& lat,
                                       const AMatrix& a, double c = 0.5);

}  // namespace nct
