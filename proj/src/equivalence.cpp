#include "nctorus/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

#include "nctorus/error.hpp"

namespace nct {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m{n, std::vector<long>(static_cast<std::size_t>(n * n), 0)};
  for (int i = 0; i < n; ++i) m.entries[static_cast<std::size_t>(i * n + i)] = 1;
  return m;
}

long IntMatrix::det() const {
  ComplexMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = static_cast<double>((*this)(i, j));
  return std::lround(determinant(m).real());
}

IntMatrix IntMatrix::inverse() const {
  const long d = det();
  if (d != 1 && d != -1) fail(ErrorCode::InvalidArgument, "integer matrix is not unimodular");
  // adjugate via cofactors
  IntMatrix inv{n, std::vector<long>(static_cast<std::size_t>(n * n), 0)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IntMatrix minor{n - 1, {}};
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          if (r != j && c != i) minor.entries.push_back((*this)(r, c));
      const long cof = (n == 1 ? 1 : minor.det()) * (((i + j) % 2) ? -1 : 1);
      inv.entries[static_cast<std::size_t>(i * n + j)] = cof * d;
    }
  return inv;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  IntMatrix r{n, std::vector<long>(static_cast<std::size_t>(n * n), 0)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) r.entries[static_cast<std::size_t>(i * n + j)] += (*this)(i, k) * o(k, j);
  return r;
}

IntVector IntMatrix::apply(const IntVector& v) const {
  IntVector r(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    long s = 0;
    for (int j = 0; j < n; ++j) s += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    r[static_cast<std::size_t>(i)] = static_cast<int>(s);
  }
  return r;
}

IntMatrix sl2(long a, long b, long c, long d) {
  if (a * d - b * c != 1) fail(ErrorCode::InvalidArgument, "SL(2,Z) element must have determinant 1");
  return IntMatrix{2, {a, b, c, d}};
}

IntMatrix sl2_M() { return sl2(1, 0, -1, 1); }
IntMatrix sl2_N() { return sl2(1, -1, 0, 1); }

namespace {

std::vector<std::string> tokenize(const std::string& word) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < word.size();) {
    const char c = word[i];
    if (c != 'M' && c != 'N') fail(ErrorCode::InvalidArgument, "word letters must be M or N");
    if (word.compare(i + 1, 3, "^-1") == 0) {
      out.push_back(std::string(1, c) + "^-1");
      i += 4;
    } else {
      out.push_back(std::string(1, c));
      i += 1;
    }
  }
  return out;
}

IntMatrix letter(const std::string& t) {
  if (t == "M") return sl2_M();
  if (t == "N") return sl2_N();
  if (t == "M^-1") return sl2_M().inverse();
  return sl2_N().inverse();
}

std::string invert_word(const std::string& word) {
  auto toks = tokenize(word);
  std::string out;
  for (auto it = toks.rbegin(); it != toks.rend(); ++it)
    out += it->size() == 1 ? *it + "^-1" : it->substr(0, 1);
  return out;
}

int half_count(const SpinStructure& e) { return static_cast<int>(std::count(e.begin(), e.end(), 1)); }

std::vector<SpinStructure> all_labels(int n) {
  std::vector<SpinStructure> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    SpinStructure e(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    out.push_back(e);
  }
  return out;
}

int mod2(long v) { return static_cast<int>(((v % 2) + 2) % 2); }

}  // namespace

IntMatrix word_matrix(const std::string& word) {
  IntMatrix m = IntMatrix::identity(2);
  for (const auto& t : tokenize(word)) m = m * letter(t);
  return m;
}

SpinStructure act_on_spin(const IntMatrix& sigma, const SpinStructure& eps) {
  if (sigma.n != 2 || eps.size() != 2) fail(ErrorCode::UnsupportedDimension, "act_on_spin is defined for n = 2");
  if (sigma.det() != 1) fail(ErrorCode::InvalidArgument, "sigma must lie in SL(2,Z)");
  const IntVector img = sigma.apply(IntVector(eps.begin(), eps.end()));
  return {mod2(img[0]), mod2(img[1])};
}

SpinStructure flip_action(const SpinStructure& eps) {
  SpinStructure out;
  for (int b : eps) out.push_back(mod2(-b));
  return out;
}

std::string spin_label(const SpinStructure& eps) {
  std::string s = "eps";
  for (int b : eps) s += static_cast<char>('0' + b);
  return s;
}

std::vector<Orbit> orbits(int n) {
  if (n < 2 || n > kMaxDimension) fail(ErrorCode::InvalidArgument, "orbits: n must be in 2..8");
  const auto labels = all_labels(n);
  std::vector<Orbit> out;
  if (n > 2) {
    for (const auto& e : labels) {
      if (flip_action(e) != e) fail(ErrorCode::PreconditionViolation, "flip moved a spin structure");
      out.push_back(Orbit{{e}, {}});
    }
    return out;
  }
  const std::vector<std::string> gens{"M", "N", "M^-1", "N^-1"};
  std::map<SpinStructure, bool> seen;
  for (const auto& start : labels) {
    if (seen[start]) continue;
    std::vector<SpinStructure> members;
    std::deque<SpinStructure> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      auto cur = queue.front();
      queue.pop_front();
      members.push_back(cur);
      for (const auto& g : gens) {
        auto nxt = act_on_spin(letter(g), cur);
        if (!seen[nxt]) seen[nxt] = true, queue.push_back(nxt);
      }
    }
    std::sort(members.begin(), members.end(), [&](const SpinStructure& a, const SpinStructure& b) {
      return std::find(labels.begin(), labels.end(), a) < std::find(labels.begin(), labels.end(), b);
    });
    // Root the witnesses at the member with the most half entries.
    SpinStructure hub = members.front();
    for (const auto& m : members)
      if (half_count(m) > half_count(hub)) hub = m;
    std::map<SpinStructure, std::string> word{{hub, ""}};
    std::deque<SpinStructure> q{hub};
    while (!q.empty()) {
      auto cur = q.front();
      q.pop_front();
      for (const auto& g : gens) {
        auto nxt = act_on_spin(letter(g), cur);
        if (!word.count(nxt)) word[nxt] = g + word[cur], q.push_back(nxt);
      }
    }
    Orbit orb{members, {}};
    for (const auto& a : members)
      for (const auto& b : members) {
        if (a == b) continue;
        const std::string w = word[b] + invert_word(word[a]);
        if (act_on_spin(word_matrix(w), a) != b) fail(ErrorCode::PreconditionViolation, "orbit witness failed");
        orb.arrows.push_back({a, b, w});
      }
    out.push_back(orb);
  }
  return out;
}

WResult build_W(const IntMatrix& sigma, const AssembledTriple& t, double tol, bool literal_tau) {
  const int n = t.n();
  if (n != 2 || sigma.n != 2) fail(ErrorCode::InvalidArgument, "build_W requires n = 2");
  if (sigma.det() != 1) fail(ErrorCode::InvalidArgument, "sigma must lie in SL(2,Z)");
  const IntMatrix inv = sigma.inverse();

  // sigma^{-T}, as a real matrix
  auto inv_t = [&](int i, int j) { return static_cast<double>(inv(j, i)); };
  const TripleConfig& src = t.config();
  TripleConfig dst = src;
  dst.eps = act_on_spin(sigma, src.eps);
  RealVector up;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) s += inv_t(i, k) * src.theta(k, l) * static_cast<double>(inv(l, j));
      up.push_back(s);
    }
  dst.theta = ThetaMatrix::from_upper(n, up);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        s += (literal_tau ? static_cast<double>(inv(i, k)) : inv_t(i, k)) * src.tau(k, j);
      dst.tau.entries[static_cast<std::size_t>(i * n + j)] = s;
    }
  const AssembledTriple target(dst);

  // B' = sigma^{-T} A sigma^{-1}; S = B' - A_target is symmetric.
  AMatrix s{n, RealVector(static_cast<std::size_t>(n * n), 0.0)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) v += inv_t(i, k) * t.A()(k, l) * static_cast<double>(inv(l, j));
      s.entries[static_cast<std::size_t>(i * n + j)] = v - target.A()(i, j);
    }

  const TruncatedLattice& la = t.lattice();
  const TruncatedLattice& lb = target.lattice();
  const LatticeOperator w([&la, &lb, sigma, s, n](const Site& site) -> std::optional<SiteImage> {
    IntVector two_mu(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) two_mu[static_cast<std::size_t>(i)] = 2 * site.m[static_cast<std::size_t>(i)] + la.spin()[static_cast<std::size_t>(i)];
    const IntVector two_nu = sigma.apply(two_mu);
    const Site img = lb.from_mu_doubled(two_nu);
    if (!lb.contains(img)) return std::nullopt;
    double q = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q += 0.25 * two_nu[static_cast<std::size_t>(i)] * s(i, j) * two_nu[static_cast<std::size_t>(j)];
    return SiteImage{img, ComplexMatrix(), phase(-0.5 * q)};
  });
  const SiteMap wm = as_map(w);

  auto intertwine = [&](const SiteMap& before, const SiteMap& after) {
    return combine({{1.0, compose({wm, before})}, {-1.0, compose({after, wm})}});
  };

  WResult out;
  out.target_eps = dst.eps;
  out.target_config = dst;
  std::size_t sites = std::numeric_limits<std::size_t>::max();
  auto run = [&](const SiteMap& expr, double& slot) {
    const auto r = interior_residual(la, expr);
    slot = std::max(slot, r.residual);
    sites = std::min(sites, r.interior_sites);
  };
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) {
      const IntVector x{a, b};
      run(intertwine(as_map(t.u(x)), as_map(target.u(sigma.apply(x)))), out.u_residual);
    }
  run(intertwine(as_map(t.dirac()), as_map(target.dirac())), out.d_residual);
  run(intertwine(as_map(t.reality()), as_map(target.reality())), out.j_residual);
  run(intertwine(as_map(t.grading()), as_map(target.grading())), out.gamma_residual);
  out.interior_sites = sites;

  auto& r = out.report;
  r.check = "build_W";
  r.tolerance = tol;
  r.max_residual = std::max({out.u_residual, out.d_residual, out.j_residual, out.gamma_residual});
  r.interior_sites = sites;
  r.required_sites = 1;
  r.constants = {{"u_residual", out.u_residual},
                 {"d_residual", out.d_residual},
                 {"j_residual", out.j_residual},
                 {"gamma_residual", out.gamma_residual}};
  r.note = "target spin structure " + spin_label(dst.eps);
  r.finish();
  return out;
}

ObstructionVerdict inner_obstruction(const ThetaMatrix& theta, const SpinStructure& eps,
                                     const SpinStructure& eps_tilde, const IntMatrix& sigma, int search_box) {
  const int n = theta.n();
  if (sigma.n != n || eps.size() != static_cast<std::size_t>(n) || eps_tilde.size() != static_cast<std::size_t>(n))
    fail(ErrorCode::InvalidArgument, "inner_obstruction: dimension mismatch");
  IntMatrix minus = IntMatrix::identity(n);
  for (auto& v : minus.entries) v = -v;
  if (n > 2 && !(sigma == IntMatrix::identity(n)) && !(sigma == minus))
    fail(ErrorCode::InvalidArgument, "for n > 2 sigma must be +-Id");
  if (n == 2 && sigma.det() != 1) fail(ErrorCode::InvalidArgument, "sigma must lie in SL(2,Z)");
  if (search_box < 0) fail(ErrorCode::InvalidArgument, "search box must be non-negative");

  // Doubled offset sigma(2 eps) - 2 eps_tilde.
  const IntVector se = sigma.apply(IntVector(eps.begin(), eps.end()));
  IntVector off(static_cast<std::size_t>(n));
  bool integral = true;
  for (int i = 0; i < n; ++i) {
    off[static_cast<std::size_t>(i)] = se[static_cast<std::size_t>(i)] - eps_tilde[static_cast<std::size_t>(i)];
    if (off[static_cast<std::size_t>(i)] % 2 != 0) integral = false;
  }
  ObstructionVerdict out;
  if (integral) {
    out.verdict = "unobstructed-necessary-condition";
    out.witness = RealVector(static_cast<std::size_t>(n), 0.0);
    return out;
  }
  IntVector k(static_cast<std::size_t>(n), -search_box);
  while (true) {
    RealVector v(static_cast<std::size_t>(n));
    bool nonzero = false;
    for (int i = 0; i < n; ++i) {
      const int two_v = 2 * k[static_cast<std::size_t>(i)] + off[static_cast<std::size_t>(i)];
      v[static_cast<std::size_t>(i)] = 0.5 * two_v;
      nonzero |= two_v != 0;
    }
    if (nonzero) {
      double worst = 0.0;
      for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += theta(i, j) * v[static_cast<std::size_t>(j)];
        worst = std::max(worst, std::abs(s));
      }
      if (worst <= 1e-9) {
        out.verdict = "unobstructed-necessary-condition";
        out.witness = v;
        return out;
      }
    }
    int i = n - 1;
    while (i >= 0 && k[static_cast<std::size_t>(i)] == search_box) k[static_cast<std::size_t>(i--)] = -search_box;
    if (i < 0) break;
    ++k[static_cast<std::size_t>(i)];
  }
  out.obstructed = true;
  out.verdict = "obstructed";
  return out;
}

}  // namespace nct
