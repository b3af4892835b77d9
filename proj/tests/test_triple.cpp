#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "nctorus/error.hpp"
#include "nctorus/triple.hpp"
#include "support.hpp"

using namespace nct;
using namespace nct::testing;

TEST_CASE("C-space real dimensions") {
  const int want[7] = {0, 1, 4, 10, 20, 36, 64};
  for (int n = 2; n <= 8; ++n) CHECK(solve_C_space(n).dimension == want[n - 2]);
  CHECK_THROWS_AS(solve_C_space(1), Error);
}

TEST_CASE("C-space for n = 3 is the real multiples of the identity") {
  const auto s = solve_C_space(3);
  REQUIRE(s.dimension == 1);
  CHECK(c_space_residual(s, 2.5 * ComplexMatrix::identity(2)) < 1e-12);
  CHECK(c_space_residual(s, I * ComplexMatrix::identity(2)) > 0.5);
}

TEST_CASE("C-space for n = 4 is the four-parameter block pattern") {
  const auto s = solve_C_space(4);
  const auto u = chiral_kramers_frame(build_generators(4));
  CHECK(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(4)) < 1e-12);
  const auto rep = build_generators(4);
  const auto g = u * rep.grading * u.adjoint();
  CHECK(max_abs_diff(g, ComplexMatrix::diagonal({1, 1, -1, -1})) < 1e-12);
  for (const auto& [a, b] : {std::pair<cplx, cplx>{1, 0}, {I, 0}, {0, 1}, {0, I}, {0.3 - 0.7 * I, 1.1 + 0.2 * I}})
    CHECK(c_space_residual(s, u.adjoint() * n4_pattern(a, b) * u) < 1e-10);
  // The identity commutes with Gamma, so it is excluded.
  CHECK(c_space_residual(s, ComplexMatrix::identity(4)) > 0.5);
}

TEST_CASE("Dirac blocks are Hermitian and square to |tau^T mu|^2") {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 5; ++n) {
    auto cfg = make_config(n, spin_bits(n, 5U), 2);
    cfg.tau = random_tau(n, rng);
    const AssembledTriple t(cfg);
    const auto& lat = t.lattice();
    for (std::size_t k = 0; k < lat.site_count(); k += 7) {
      const Site s = lat.site(k);
      const auto d = t.dirac_block(s);
      CHECK(hermiticity_defect(d) < 1e-14);
      double r2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double c = 0.0;
        for (int i = 0; i < n; ++i) c += cfg.tau(i, j) * lat.mu(s, i);
        r2 += c * c;
      }
      CHECK(max_abs_diff(d * d, r2 * ComplexMatrix::identity(lat.spinor_mult())) < 1e-12);
    }
  }
}

TEST_CASE("one-dimensional spectrum is the lattice itself") {
  const AssembledTriple t(make_config(1, {0}, 2));
  auto s = full_spectrum(t);
  std::sort(s.begin(), s.end());
  CHECK(s == std::vector<double>{-2, -1, 0, 1, 2});
  CHECK(kernel_dimension(t, 1e-8) == 1);
  const AssembledTriple half(make_config(1, {1}, 2));
  auto h = full_spectrum(half);
  std::sort(h.begin(), h.end());
  CHECK(h == std::vector<double>{-2.5, -1.5, -0.5, 0.5, 1.5, 2.5});
}

TEST_CASE("kernel and spectral gap for n = 2") {
  const double min_abs[4] = {0.0, 0.5, 0.5, std::sqrt(0.5)};
  for (unsigned mask = 0; mask < 4; ++mask) {
    const auto s = full_spectrum(AssembledTriple(make_config(2, spin_bits(2, mask), 4)));
    CHECK(kernel_dimension(s, 1e-10) == (mask == 0 ? 2u : 0u));
    double m = INFINITY;
    for (double x : s)
      if (std::abs(x) > 1e-10) m = std::min(m, std::abs(x));
    if (mask != 0) CHECK(m == doctest::Approx(min_abs[mask]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(kernel_dimension(std::vector<double>{1.0}, 0.0), Error);
}

TEST_CASE("J is antiunitary and squares to eps_J") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int n : {2, 3, 4}) {
    const AssembledTriple t(make_config(n, spin_bits(n, 1U), 2));
    const std::size_t dim = t.lattice().dimension();
    std::vector<cplx> v(dim), w(dim);
    for (std::size_t k = 0; k < dim; ++k) v[k] = {g(rng), g(rng)}, w[k] = {g(rng), g(rng)};
    const auto jv = apply_J(t, v), jw = apply_J(t, w), jjv = apply_J(t, jv);
    cplx a = 0.0, b = 0.0;
    double err = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      a += std::conj(jv[k]) * jw[k];
      b += std::conj(v[k]) * w[k];
      err = std::max(err, std::abs(jjv[k] - static_cast<double>(t.rep().signs.eps_J) * v[k]));
    }
    CHECK(std::abs(a - std::conj(b)) < 1e-10);
    CHECK(err < 1e-12);
  }
}

TEST_CASE("admissible C is accepted and inadmissible C is rejected") {
  auto cfg = make_config(3, {0, 0, 0}, 2);
  cfg.C = 2.5 * ComplexMatrix::identity(2);
  const AssembledTriple t(cfg);
  CHECK(t.c_membership_residual() < 1e-12);
  const auto d = t.dirac_block(t.lattice().from_mu_doubled({0, 0, 0}));
  CHECK(max_abs_diff(d, cfg.C) == 0.0);
  cfg.C = ComplexMatrix{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(AssembledTriple{cfg}, Error);
}

TEST_CASE("invalid configurations") {
  auto cfg = make_config(2, {0, 0}, 2);
  cfg.tau.entries = {1, 2, 2, 4};
  CHECK_THROWS_AS(AssembledTriple{cfg}, Error);
  cfg = make_config(2, {0, 0}, 2);
  cfg.C = ComplexMatrix::identity(3);
  CHECK_THROWS_AS(AssembledTriple{cfg}, Error);
  const AssembledTriple odd(make_config(3, {0, 0, 0}, 1));
  CHECK_THROWS_AS(odd.grading(), Error);
  Site far;
  far.n = 3;
  far.m[0] = 9;
  CHECK_THROWS_AS(odd.dirac_block(far), Error);
}
