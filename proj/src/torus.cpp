#include "nctorus/torus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nctorus/error.hpp"

namespace nct {

ThetaMatrix ThetaMatrix::from_upper(int n, const RealVector& upper) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "theta: dimension must be positive");
  if (upper.size() != static_cast<std::size_t>(n * (n - 1) / 2))
    fail(ErrorCode::InvalidArgument, "theta: expected " + std::to_string(n * (n - 1) / 2) + " upper-triangle entries");
  ThetaMatrix t;
  t.n_ = n;
  t.e_.assign(static_cast<std::size_t>(n * n), 0.0);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!std::isfinite(upper[k])) fail(ErrorCode::InvalidArgument, "theta: non-finite entry");
      t.e_[static_cast<std::size_t>(i * n + j)] = upper[k];
      t.e_[static_cast<std::size_t>(j * n + i)] = -upper[k];
      ++k;
    }
  return t;
}

RealVector ThetaMatrix::upper() const {
  RealVector u;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) u.push_back((*this)(i, j));
  return u;
}

double ThetaMatrix::form(const IntVector& x, const IntVector& y) const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) s += x[static_cast<std::size_t>(i)] * (*this)(i, j) * y[static_cast<std::size_t>(j)];
  return s;
}

AMatrix canonical_A(const ThetaMatrix& theta) {
  AMatrix a{theta.n(), RealVector(static_cast<std::size_t>(theta.n() * theta.n()), 0.0)};
  for (int i = 0; i < theta.n(); ++i)
    for (int j = i + 1; j < theta.n(); ++j) a.entries[static_cast<std::size_t>(i * a.n + j)] = theta(i, j);
  return a;
}

ThetaMatrix theta_of(const AMatrix& a) {
  RealVector u;
  for (int i = 0; i < a.n; ++i)
    for (int j = i + 1; j < a.n; ++j) u.push_back(a(i, j) - a(j, i));
  return ThetaMatrix::from_upper(a.n, u);
}

SpinStructure spin_from_values(const RealVector& eps) {
  SpinStructure s;
  for (double e : eps) {
    if (e == 0.0)
      s.push_back(0);
    else if (e == 0.5)
      s.push_back(1);
    else
      fail(ErrorCode::InvalidArgument, "spin structure entries must be 0 or 1/2");
  }
  return s;
}

Site shifted(const Site& s, const IntVector& x) {
  Site t = s;
  for (int i = 0; i < s.n; ++i) t.m[static_cast<std::size_t>(i)] += x[static_cast<std::size_t>(i)];
  return t;
}

TruncatedLattice::TruncatedLattice(int n, SpinStructure eps, int cutoff, std::size_t spinor_mult)
    : n_(n), cutoff_(cutoff), eps_(std::move(eps)), spinor_(spinor_mult) {
  if (n < 1 || n > kMaxDimension) fail(ErrorCode::UnsupportedDimension, "lattice dimension out of range");
  if (eps_.size() != static_cast<std::size_t>(n)) fail(ErrorCode::InvalidArgument, "spin structure length mismatch");
  for (int b : eps_)
    if (b != 0 && b != 1) fail(ErrorCode::InvalidArgument, "spin structure entries must be 0 or 1/2");
  if (cutoff < 1) fail(ErrorCode::InvalidArgument, "cutoff must be positive");
  stride_.assign(static_cast<std::size_t>(n), 1);
  count_ = 1;
  for (int i = n - 1; i >= 0; --i) {
    stride_[static_cast<std::size_t>(i)] = count_;
    count_ *= static_cast<std::size_t>(upper(i) - lower(i) + 1);
  }
}

RealVector TruncatedLattice::epsilon() const {
  RealVector e;
  for (int b : eps_) e.push_back(0.5 * b);
  return e;
}

bool TruncatedLattice::contains(const Site& s) const {
  if (s.n != n_) return false;
  for (int i = 0; i < n_; ++i) {
    const int v = s.m[static_cast<std::size_t>(i)];
    if (v < lower(i) || v > upper(i)) return false;
  }
  return true;
}

std::size_t TruncatedLattice::index(const Site& s) const {
  if (!contains(s)) fail(ErrorCode::IndexError, "site outside the truncated lattice");
  std::size_t idx = 0;
  for (int i = 0; i < n_; ++i)
    idx += static_cast<std::size_t>(s.m[static_cast<std::size_t>(i)] - lower(i)) * stride_[static_cast<std::size_t>(i)];
  return idx;
}

Site TruncatedLattice::site(std::size_t index) const {
  if (index >= count_) fail(ErrorCode::IndexError, "site index out of range");
  Site s;
  s.n = n_;
  for (int i = 0; i < n_; ++i) {
    const std::size_t st = stride_[static_cast<std::size_t>(i)];
    s.m[static_cast<std::size_t>(i)] = lower(i) + static_cast<int>(index / st);
    index %= st;
  }
  return s;
}

RealVector TruncatedLattice::mu(const Site& s) const {
  RealVector v(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) v[static_cast<std::size_t>(i)] = mu(s, i);
  return v;
}

Site TruncatedLattice::negate(const Site& s) const {
  Site t = s;
  for (int i = 0; i < n_; ++i)
    t.m[static_cast<std::size_t>(i)] = -s.m[static_cast<std::size_t>(i)] - eps_[static_cast<std::size_t>(i)];
  return t;
}

Site TruncatedLattice::from_mu_doubled(const IntVector& two_mu) const {
  Site s;
  s.n = n_;
  for (int i = 0; i < n_; ++i) {
    const int v = two_mu[static_cast<std::size_t>(i)] - eps_[static_cast<std::size_t>(i)];
    if (v % 2 != 0) fail(ErrorCode::InvalidArgument, "point is not on the shifted lattice");
    s.m[static_cast<std::size_t>(i)] = v / 2;
  }
  return s;
}

bool apply(const LatticeOperator& op, SiteState& state) {
  auto img = op.image(state.site);
  if (!img) return false;
  if (op.antilinear()) {
    state.scale = std::conj(state.scale);
    if (!state.identity)
      for (auto& z : state.block.entries()) z = std::conj(z);
  }
  if (img->shared_block) {
    state.block = state.identity ? *img->shared_block : *img->shared_block * state.block;
    state.identity = false;
  } else if (!img->block.empty()) {
    state.block = state.identity ? std::move(img->block) : img->block * state.block;
    state.identity = false;
  }
  state.scale *= img->scalar;
  state.site = img->target;
  return true;
}

std::vector<cplx> apply(const LatticeOperator& op, const TruncatedLattice& lat, const std::vector<cplx>& v) {
  const std::size_t d = lat.spinor_mult();
  if (v.size() != lat.dimension()) fail(ErrorCode::InvalidArgument, "vector length does not match lattice");
  std::vector<cplx> out(v.size(), cplx(0.0, 0.0));
  for (std::size_t s = 0; s < lat.site_count(); ++s) {
    SiteState st{lat.site(s), ComplexMatrix(d, 1)};
    for (std::size_t j = 0; j < d; ++j) st.block(j, 0) = v[s * d + j];
    if (!apply(op, st)) continue;
    const std::size_t t = lat.index(st.site);
    for (std::size_t k = 0; k < d; ++k) out[t * d + k] += st.scale * st.block(k, 0);
  }
  return out;
}

SiteMap as_map(const LatticeOperator& op) {
  return [op](SiteState s) -> std::optional<SiteState> {
    if (!apply(op, s)) return std::nullopt;
    return s;
  };
}

SiteMap compose(std::vector<SiteMap> factors) {
  return [factors = std::move(factors)](SiteState s) -> std::optional<SiteState> {
    std::optional<SiteState> cur = std::move(s);
    for (auto it = factors.rbegin(); it != factors.rend() && cur; ++it) cur = (*it)(std::move(*cur));
    return cur;
  };
}

SiteMap combine(std::vector<std::pair<cplx, SiteMap>> terms) {
  return [terms = std::move(terms)](SiteState s) -> std::optional<SiteState> {
    std::optional<SiteState> sum;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const auto& [c, f] = terms[k];
      auto r = k + 1 == terms.size() ? f(std::move(s)) : f(s);
      if (!r) return std::nullopt;
      if (!sum) {
        sum = std::move(*r);
        sum->scale *= c;
      } else {
        if (r->site != sum->site) fail(ErrorCode::InvalidArgument, "combined terms map to different sites");
        if (r->block.rows() != sum->block.rows() || r->block.cols() != sum->block.cols())
          fail(ErrorCode::InvalidArgument, "combined terms have different shapes");
        sum->identity = false;
        if (sum->scale != cplx(1.0, 0.0)) {
          sum->block *= sum->scale;
          sum->scale = 1.0;
        }
        auto& acc = sum->block.entries();
        const auto& add = r->block.entries();
        const cplx f = c * r->scale;
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += f * add[k];
      }
    }
    return sum;
  };
}

SiteMap commutator(const SiteMap& a, const SiteMap& b) {
  return combine({{1.0, compose({a, b})}, {-1.0, compose({b, a})}});
}

InteriorResidual interior_residual(const TruncatedLattice& lat, const SiteMap& expr) {
  InteriorResidual out;
  const auto id = ComplexMatrix::identity(lat.spinor_mult());
  for (std::size_t k = 0; k < lat.site_count(); ++k) {
    auto r = expr(SiteState{lat.site(k), id, 1.0, true});
    if (!r) continue;
    ++out.interior_sites;
    out.residual = std::max(out.residual, std::abs(r->scale) * max_abs(r->block));
  }
  return out;
}

namespace {

double quad(const AMatrix& a, const RealVector& u, const RealVector& v) {
  double s = 0.0;
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) s += u[static_cast<std::size_t>(i)] * a(i, j) * v[static_cast<std::size_t>(j)];
  return s;
}

RealVector to_real(const IntVector& x) { return RealVector(x.begin(), x.end()); }

void check_shift(const IntVector& x, const TruncatedLattice& lat, const AMatrix& a) {
  if (x.size() != static_cast<std::size_t>(lat.n()) || a.n != lat.n())
    fail(ErrorCode::InvalidArgument, "shift vector or A has wrong dimension");
}

LatticeOperator shift_operator(const IntVector& x, const TruncatedLattice& lat, const AMatrix& a, bool opposite) {
  check_shift(x, lat, a);
  const RealVector xr = to_real(x);
  const double half = 0.5 * quad(a, xr, xr);
  return LatticeOperator([x, xr, half, lat, a, opposite](const Site& s) -> std::optional<SiteImage> {
    Site t = shifted(s, x);
    if (!lat.contains(t)) return std::nullopt;
    double lin = 0.0;
    for (int i = 0; i < a.n; ++i)
      for (int j = 0; j < a.n; ++j)
        lin += opposite ? lat.mu(s, i) * a(i, j) * xr[static_cast<std::size_t>(j)]
                        : xr[static_cast<std::size_t>(i)] * a(i, j) * lat.mu(s, j);
    return SiteImage{t, ComplexMatrix(), phase(half + lin)};
  });
}

}  // namespace

LatticeOperator u_action(const IntVector& x, const TruncatedLattice& lat, const AMatrix& a) {
  return shift_operator(x, lat, a, false);
}

LatticeOperator u_opposite_action(const IntVector& x, const TruncatedLattice& lat, const AMatrix& a) {
  return shift_operator(x, lat, a, true);
}

LatticeOperator derivation(int i, const TruncatedLattice& lat) {
  if (i < 0 || i >= lat.n()) fail(ErrorCode::InvalidArgument, "derivation index out of range");
  return LatticeOperator([i, lat](const Site& s) -> std::optional<SiteImage> {
    return SiteImage{s, ComplexMatrix(), cplx(lat.mu(s, i), 0.0)};
  });
}

LatticeOperator identity_operator(const TruncatedLattice&) {
  return LatticeOperator([](const Site& s) -> std::optional<SiteImage> { return SiteImage{s, ComplexMatrix(), 1.0}; });
}

LatticeOperator representation_intertwiner(const AMatrix& a, const AMatrix& a2, const TruncatedLattice& lat) {
  AMatrix s{a.n, a.entries};
  for (std::size_t k = 0; k < s.entries.size(); ++k) s.entries[k] -= a2.entries[k];
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j)
      if (std::abs(s(i, j) - s(j, i)) > 1e-12) fail(ErrorCode::InvalidArgument, "A - A' must be symmetric");
  return LatticeOperator([s, lat](const Site& site) -> std::optional<SiteImage> {
    const RealVector mu = lat.mu(site);
    return SiteImage{site, ComplexMatrix(), phase(-0.5 * quad(s, mu, mu))};
  });
}

ProductRelation product_relation_check(const IntVector& x, const IntVector& y, const TruncatedLattice& lat,
                                       const AMatrix& a, double c) {
  const ThetaMatrix theta = theta_of(a);
  IntVector xy(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xy[i] = x[i] + y[i];
  const SiteMap ux = as_map(u_action(x, lat, a)), uy = as_map(u_action(y, lat, a));
  const SiteMap uxy = as_map(u_action(xy, lat, a));
  const double xty = theta.form(x, y);
  const auto prod = combine({{1.0, compose({ux, uy})}, {-phase(c * xty), uxy}});
  const auto comm = combine({{1.0, compose({ux, uy})}, {-phase(xty), compose({uy, ux})}});
  const InteriorResidual p = interior_residual(lat, prod), q = interior_residual(lat, comm);
  return {p.residual, q.residual, std::min(p.interior_sites, q.interior_sites)};
}

}  // namespace nct
