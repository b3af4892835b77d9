#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "nctorus/clifford.hpp"
#include "nctorus/linalg.hpp"
#include "nctorus/run.hpp"
#include "nctorus/torus.hpp"
#include "nctorus/triple.hpp"

namespace nct::testing {

inline const cplx I{0.0, 1.0};

inline SpinStructure spin_bits(int n, unsigned mask) {
  SpinStructure s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = static_cast<int>((mask >> i) & 1U);
  return s;
}

inline TripleConfig make_config(int n, const SpinStructure& eps, int cutoff) {
  TripleConfig c;
  c.n = n;
  c.theta = ThetaMatrix::from_upper(n, default_theta(n));
  c.eps = eps;
  c.tau = TauMatrix::identity(n);
  c.cutoff = cutoff;
  return c;
}

inline RealVector random_upper(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealVector v(static_cast<std::size_t>(n * (n - 1) / 2));
  for (double& x : v) x = u(rng);
  return v;
}

inline TauMatrix random_tau(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  while (true) {
    TauMatrix t{n, RealVector(static_cast<std::size_t>(n * n))};
    for (double& x : t.entries) x = u(rng);
    if (std::abs(t.det()) > 0.2) return t;
  }
}

inline ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix a(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    a(i, i) = g(rng);
    for (std::size_t j = i + 1; j < d; ++j) {
      a(i, j) = {g(rng), g(rng)};
      a(j, i) = std::conj(a(i, j));
    }
  }
  return a;
}

// Explicit real structures listed for n = 2..5 (n = 3 repeats n = 2).
inline ComplexMatrix listed_J(int n) {
  const ComplexMatrix j2{{0, 1}, {-1, 0}};
  if (n == 2 || n == 3) return j2;
  if (n == 4) return {{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
  return {{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
}

// Distance between a and b after the best global phase on b.
inline double phase_aligned_residual(const ComplexMatrix& a, const ComplexMatrix& b) {
  const cplx overlap = (b.adjoint() * a).trace();
  const cplx ph = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
  return max_abs_diff(a, ph * b);
}

// Unitary whose rows are (u1, -J u1, u3, -J u3)^dagger, with u1 / u3 eigenvectors of Gamma
// for +1 / -1 and J v = Lambda conj(v). In this frame Gamma = diag(1,1,-1,-1).
inline ComplexMatrix chiral_kramers_frame(const CliffordRep& rep) {
  const auto eig = hermitian_eigen(rep.grading);
  const std::size_t d = rep.spinor_dim();
  auto column = [&](std::size_t k) {
    std::vector<cplx> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = eig.eigenvectors(i, k);
    return v;
  };
  auto minus_j = [&](const std::vector<cplx>& v) {
    std::vector<cplx> w(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) w[i] -= rep.reality(i, k) * std::conj(v[k]);
    return w;
  };
  const auto u1 = column(d - 1), u3 = column(0);
  const std::vector<std::vector<cplx>> us{u1, minus_j(u1), u3, minus_j(u3)};
  ComplexMatrix u(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) u(r, c) = std::conj(us[r][c]);
  return u;
}

// The four-parameter block pattern for n = 4, in the chiral Kramers frame.
inline ComplexMatrix n4_pattern(cplx a, cplx b) {
  return {{0, 0, a, b}, {0, 0, -std::conj(b), std::conj(a)}, {std::conj(a), -b, 0, 0}, {std::conj(b), a, 0, 0}};
}

}  // namespace nct::testing
