#include "nctorus/hochschild.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "nctorus/error.hpp"

namespace nct {

namespace {

std::size_t pair_count(int n) { return static_cast<std::size_t>(n * (n - 1) / 2); }

IntVector add_vec(const IntVector& a, const IntVector& b) {
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

void add_phase(std::vector<int>& acc, const std::vector<int>& inc) {
  for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += inc[k];
}

}  // namespace

int HochschildChain::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(std::get<2>(terms_.begin()->first).size()) - 1;
}

void HochschildChain::add(ChainTerm term) {
  if (term.factors.empty()) fail(ErrorCode::InvalidChain, "chain term needs at least the x0 factor");
  for (const auto& x : term.factors)
    if (x.size() != static_cast<std::size_t>(n_)) fail(ErrorCode::InvalidChain, "factor has wrong dimension");
  if (term.opposite && term.opposite->size() != static_cast<std::size_t>(n_))
    fail(ErrorCode::InvalidChain, "opposite part has wrong dimension");
  if (term.phase2.empty()) term.phase2.assign(pair_count(n_), 0);
  if (term.phase2.size() != pair_count(n_)) fail(ErrorCode::InvalidChain, "phase exponent has wrong length");
  if (!terms_.empty() && static_cast<int>(term.factors.size()) - 1 != degree())
    fail(ErrorCode::InvalidChain, "mixed chain degrees");
  // U_0^o is the identity, so an all-zero opposite part is normalized away.
  if (term.opposite && std::all_of(term.opposite->begin(), term.opposite->end(), [](int v) { return v == 0; }))
    term.opposite.reset();
  Key key{term.opposite.has_value(), term.opposite.value_or(IntVector{}), std::move(term.factors),
          std::move(term.phase2)};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    if (term.coeff != cplx(0.0, 0.0)) terms_.emplace(std::move(key), term.coeff);
    return;
  }
  it->second += term.coeff;
  if (it->second == cplx(0.0, 0.0)) terms_.erase(it);
}

std::vector<ChainTerm> HochschildChain::terms() const {
  std::vector<ChainTerm> out;
  for (const auto& [key, c] : terms_) {
    ChainTerm t;
    t.coeff = c;
    if (std::get<0>(key)) t.opposite = std::get<1>(key);
    t.factors = std::get<2>(key);
    t.phase2 = std::get<3>(key);
    out.push_back(std::move(t));
  }
  return out;
}

HochschildChain& HochschildChain::operator+=(const HochschildChain& other) {
  if (other.n_ != n_) fail(ErrorCode::InvalidChain, "chains of different dimension");
  for (auto& t : other.terms()) add(std::move(t));
  return *this;
}

HochschildChain HochschildChain::scaled(cplx s) const {
  HochschildChain out(n_);
  for (auto& t : terms()) {
    t.coeff *= s;
    out.add(std::move(t));
  }
  return out;
}

std::vector<int> product_phase2(const IntVector& a, const IntVector& b) {
  const int n = static_cast<int>(a.size());
  std::vector<int> p;
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l)
      p.push_back(a[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(l)] -
                  a[static_cast<std::size_t>(l)] * b[static_cast<std::size_t>(k)]);
  return p;
}

std::pair<IntVector, std::vector<int>> monomial_product(const std::vector<IntVector>& xs) {
  if (xs.empty()) fail(ErrorCode::InvalidArgument, "empty monomial product");
  IntVector acc = xs.front();
  std::vector<int> ph(pair_count(static_cast<int>(acc.size())), 0);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    add_phase(ph, product_phase2(acc, xs[i]));
    acc = add_vec(acc, xs[i]);
  }
  return {acc, ph};
}

cplx term_phase(const ChainTerm& t, const ThetaMatrix& theta) {
  const RealVector up = theta.upper();
  double s = 0.0;
  for (std::size_t k = 0; k < up.size(); ++k) s += 0.5 * t.phase2[k] * up[k];
  return phase(s);
}

HochschildChain boundary(const HochschildChain& chain) {
  const int k = chain.degree();
  if (k < 1) fail(ErrorCode::InvalidChain, "boundary needs a chain of degree >= 1");
  HochschildChain out(chain.n());
  for (const auto& t : chain.terms()) {
    for (int i = 0; i <= k; ++i) {
      ChainTerm f;
      f.coeff = (i % 2 ? -1.0 : 1.0) * t.coeff;
      f.opposite = t.opposite;
      f.phase2 = t.phase2;
      const auto& x = t.factors;
      if (i < k) {
        add_phase(f.phase2, product_phase2(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(i + 1)]));
        for (int j = 0; j <= k; ++j) {
          if (j == i)
            f.factors.push_back(add_vec(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(i + 1)]));
          else if (j != i + 1)
            f.factors.push_back(x[static_cast<std::size_t>(j)]);
        }
      } else {
        // last face: U_{xk} acts on the left of the coefficient
        add_phase(f.phase2, product_phase2(x[static_cast<std::size_t>(k)], x[0]));
        f.factors.push_back(add_vec(x[static_cast<std::size_t>(k)], x[0]));
        for (int j = 1; j < k; ++j) f.factors.push_back(x[static_cast<std::size_t>(j)]);
      }
      out.add(std::move(f));
    }
  }
  return out;
}

HochschildChain build_cycle(int n) {
  if (n < 1 || n > 6) fail(ErrorCode::UnsupportedDimension, "build_cycle supports 1 <= n <= 6");
  HochschildChain c(n);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<IntVector> units;
    for (int p : perm) {
      IntVector e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(p)] = 1;
      units.push_back(e);
    }
    auto [sum, ph] = monomial_product(units);
    // (e(phi) U_s)^* = e(-phi) U_{-s}
    ChainTerm t;
    t.coeff = static_cast<double>(permutation_sign(perm));
    for (auto& v : sum) v = -v;
    for (auto& v : ph) v = -v;
    t.phase2 = ph;
    t.factors.push_back(sum);
    for (auto& u : units) t.factors.push_back(u);
    c.add(std::move(t));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return c;
}

Representative hochschild_representative(const AssembledTriple& t, const HochschildChain& chain) {
  const int n = t.n();
  if (chain.n() != n) fail(ErrorCode::InvalidChain, "chain dimension does not match the triple");
  const SiteMap dmap = as_map(t.dirac());
  std::vector<std::pair<cplx, SiteMap>> sum;
  for (const auto& term : chain.terms()) {
    IntVector total(static_cast<std::size_t>(n), 0);
    for (const auto& x : term.factors) total = add_vec(total, x);
    if (term.opposite) total = add_vec(total, *term.opposite);
    if (std::any_of(total.begin(), total.end(), [](int v) { return v != 0; }))
      fail(ErrorCode::InvalidChain, "chain term has nonzero total lattice degree");
    std::vector<SiteMap> word{as_map(t.u(term.factors.front()))};
    if (term.opposite) word.push_back(as_map(t.u_op(*term.opposite)));
    for (std::size_t i = 1; i < term.factors.size(); ++i)
      word.push_back(commutator(dmap, as_map(t.u(term.factors[i]))));
    sum.push_back({term.coeff * term_phase(term, t.config().theta), compose(std::move(word))});
  }
  const std::size_t d = t.lattice().spinor_mult();
  Representative out;
  out.block = ComplexMatrix(d, d);
  if (sum.empty()) {
    out.interior_sites = t.lattice().site_count();
    return out;
  }
  const SiteMap expr = combine(std::move(sum));
  bool first = true;
  const auto id = ComplexMatrix::identity(d);
  for (std::size_t k = 0; k < t.lattice().site_count(); ++k) {
    const Site s = t.lattice().site(k);
    auto r = expr(SiteState{s, id, 1.0, true});
    if (!r) continue;
    if (r->site != s) fail(ErrorCode::InvalidChain, "representative is not site-diagonal");
    ++out.interior_sites;
    if (first) {
      out.block = r->value();
      first = false;
    } else {
      out.residual = std::max(out.residual, max_abs_diff(out.block, r->value()));
    }
  }
  return out;
}

}  // namespace nct
