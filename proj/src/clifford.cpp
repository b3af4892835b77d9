#include "nctorus/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nctorus/error.hpp"

namespace nct {

namespace {

const cplx I(0.0, 1.0);

void check_range(int n) {
  if (n < 1 || n > kMaxDimension)
    fail(ErrorCode::UnsupportedDimension, "dimension " + std::to_string(n) + " outside 1.." +
                                              std::to_string(kMaxDimension));
}

ComplexMatrix e1() { return {{0.0, I}, {-I, 0.0}}; }
ComplexMatrix e2() { return {{1.0, 0.0}, {0.0, -1.0}}; }
ComplexMatrix f1() { return {{0.0, -1.0}, {1.0, 0.0}}; }
ComplexMatrix f2() { return {{I, 0.0}, {0.0, -I}}; }

// One step of Cl_{0,n-2} (x) Cl_{2,0} = Cl_{n,0} (or the dual with a, b swapped).
std::vector<ComplexMatrix> lift(const std::vector<ComplexMatrix>& lower, const ComplexMatrix& a,
                                const ComplexMatrix& b) {
  const std::size_t d = lower.empty() ? 1 : lower.front().rows();
  const auto id = ComplexMatrix::identity(d);
  std::vector<ComplexMatrix> out{kron(id, a), kron(id, b)};
  const ComplexMatrix ab = a * b;
  for (const auto& g : lower) out.push_back(kron(g, ab));
  return out;
}

ComplexMatrix reshape(const ComplexMatrix& basis, std::size_t col, std::size_t d) {
  ComplexMatrix m(d, d);
  for (std::size_t k = 0; k < d * d; ++k) m(k / d, k % d) = basis(k, col);
  return m;
}

}  // namespace

SignTriple sign_table(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "sign_table: n must be positive");
  static const int J[8] = {1, 1, -1, -1, -1, -1, 1, 1};
  static const int D[8] = {1, -1, 1, 1, 1, -1, 1, 1};
  static const int G[8] = {1, 0, -1, 0, 1, 0, -1, 0};
  const int r = n % 8;
  SignTriple s{J[r], D[r], std::nullopt};
  if (n % 2 == 0) s.eps_Gamma = G[r];
  return s;
}

std::vector<ComplexMatrix> positive_generators(int n) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "negative dimension");
  if (n == 0) return {};
  if (n == 1) return {ComplexMatrix{{1.0}}};
  if (n == 2) return {e1(), e2()};
  return lift(negative_generators(n - 2), e1(), e2());
}

std::vector<ComplexMatrix> negative_generators(int n) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "negative dimension");
  if (n == 0) return {};
  if (n == 1) return {ComplexMatrix{{I}}};
  if (n == 2) return {f1(), f2()};
  return lift(positive_generators(n - 2), f1(), f2());
}

ComplexMatrix build_grading(const CliffordRep& rep) {
  if (rep.n % 2 != 0) fail(ErrorCode::InvalidArgument, "grading exists only for even n");
  ComplexMatrix g = rep.generators.front();
  for (std::size_t i = 1; i < rep.generators.size(); ++i) g = g * rep.generators[i];
  cplx s = 1.0;
  for (int k = 0; k < rep.n / 2; ++k) s *= -I;
  return s * g;
}

RealitySpace reality_solution_space(const CliffordRep& rep) {
  const std::size_t d = rep.spinor_dim();
  const int eps_D = rep.signs.eps_D;
  std::vector<std::pair<ComplexMatrix, double>> constraints;  // (X, s): Lambda conj(X) + s X Lambda = 0
  for (const auto& a : rep.generators) constraints.push_back({a, static_cast<double>(eps_D)});
  if (rep.signs.eps_Gamma) constraints.push_back({rep.grading, -static_cast<double>(*rep.signs.eps_Gamma)});

  ComplexMatrix system(constraints.size() * d * d, d * d);
  for (std::size_t k = 0; k < d * d; ++k) {
    ComplexMatrix e(d, d);
    e(k / d, k % d) = 1.0;
    for (std::size_t c = 0; c < constraints.size(); ++c) {
      const auto& [x, s] = constraints[c];
      const ComplexMatrix r = e * x.conj() + s * (x * e);
      for (std::size_t q = 0; q < d * d; ++q) system(c * d * d + q, k) = r.entries()[q];
    }
  }
  const ComplexMatrix ns = nullspace(system, 1e-10);
  RealitySpace out;
  out.dimension = static_cast<int>(ns.cols());
  for (std::size_t c = 0; c < ns.cols(); ++c) out.basis.push_back(reshape(ns, c, d));
  return out;
}

CliffordRep build_generators(int n) {
  check_range(n);
  CliffordRep rep;
  rep.n = n;
  rep.generators = positive_generators(n);
  rep.signs = sign_table(n);
  if (n % 2 == 0) rep.grading = build_grading(rep);

  const RealitySpace space = reality_solution_space(rep);
  if (space.dimension < 1) fail(ErrorCode::PreconditionViolation, "no reality intertwiner found");
  ComplexMatrix lam = space.basis.front();
  const double scale = std::sqrt((lam * lam.adjoint()).trace().real() / static_cast<double>(rep.spinor_dim()));
  lam *= 1.0 / scale;
  for (const auto& z : lam.entries()) {
    if (std::abs(z) > 1e-8) {
      lam *= std::conj(z) / std::abs(z);
      break;
    }
  }
  rep.reality = lam;
  return rep;
}

ComplexMatrix build_reality(int n) { return build_generators(n).reality; }

double rep_invariant_residual(const CliffordRep& rep) {
  const std::size_t d = rep.spinor_dim();
  const auto id = ComplexMatrix::identity(d);
  double r = 0.0;
  const auto& g = rep.generators;
  for (std::size_t i = 0; i < g.size(); ++i) {
    r = std::max(r, hermiticity_defect(g[i]));
    r = std::max(r, max_abs_diff(g[i] * g[i], id));
    for (std::size_t j = i + 1; j < g.size(); ++j) r = std::max(r, max_abs(g[i] * g[j] + g[j] * g[i]));
  }
  const ComplexMatrix& lam = rep.reality;
  r = std::max(r, max_abs_diff(lam * lam.adjoint(), id));
  r = std::max(r, max_abs_diff(lam * lam.conj(), static_cast<double>(rep.signs.eps_J) * id));
  for (const auto& a : g)
    r = std::max(r, max_abs_diff(lam * a.conj() * lam.adjoint(), -static_cast<double>(rep.signs.eps_D) * a));
  if (rep.n % 2 == 0) {
    const ComplexMatrix& gm = rep.grading;
    r = std::max(r, hermiticity_defect(gm));
    r = std::max(r, max_abs_diff(gm * gm, id));
    r = std::max(r, std::abs(gm.trace()));
    for (const auto& a : g) r = std::max(r, max_abs(gm * a + a * gm));
    r = std::max(r, max_abs_diff(lam * gm.conj() * lam.adjoint(),
                                 static_cast<double>(*rep.signs.eps_Gamma) * gm));
  }
  return r;
}

}  // namespace nct
