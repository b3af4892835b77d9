#include "nctorus/cliffordcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nctorus/axioms.hpp"
#include "nctorus/clifford.hpp"
#include "nctorus/error.hpp"

namespace nct {

namespace {

constexpr double kTol = 1e-9;

void check_shapes(const std::vector<ComplexMatrix>& mats) {
  if (mats.empty()) fail(ErrorCode::InvalidArgument, "no matrices given");
  const std::size_t d = mats.front().rows();
  for (const auto& m : mats)
    if (m.rows() != d || m.cols() != d) fail(ErrorCode::InvalidArgument, "matrices must be square and of equal size");
}

}  // namespace

CliffordVerdict clifford_check(const std::vector<ComplexMatrix>& mats, std::size_t samples, std::uint64_t seed) {
  check_shapes(mats);
  const std::size_t k = mats.size(), d = mats.front().rows();
  const auto id = ComplexMatrix::identity(d);
  CliffordVerdict v;
  v.seed = seed;

  for (const auto& m : mats) v.hermiticity_defect = std::max(v.hermiticity_defect, hermiticity_defect(m));
  v.is_hermitian = v.hermiticity_defect <= 1e-10;

  v.pencil_min_singular = pencil_minimum(mats, samples, seed).min_singular;
  v.pencil_nonsingular = v.pencil_min_singular > 1e-6;

  const ComplexMatrix p = antisymmetrized_product(mats);
  if (k % 2 == 1) {
    v.lambda = p.trace() / static_cast<double>(d);
    v.antisym_residual = max_abs_diff(p, v.lambda * id);
    v.antisym_scalar = v.antisym_residual <= kTol && std::abs(v.lambda) > kTol;
  } else {
    const ComplexMatrix p2 = p * p;
    const cplx s = p2.trace() / static_cast<double>(d);
    v.lambda = std::sqrt(s);
    v.antisym_residual = max_abs_diff(p2, s * id);
    if (std::abs(v.lambda) > kTol) {
      const ComplexMatrix g = (1.0 / v.lambda) * p;
      v.antisym_residual = std::max(v.antisym_residual, hermiticity_defect(g));
    }
    v.antisym_scalar = v.antisym_residual <= kTol && std::abs(v.lambda) > kTol;
  }

  std::vector<double> gram(k * k, 0.0);
  bool real = true;
  ComplexMatrix gm(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const ComplexMatrix half = 0.5 * (mats[i] * mats[j] + mats[j] * mats[i]);
      const cplx g = half.trace() / static_cast<double>(d);
      v.anticommutator_residual = std::max(v.anticommutator_residual, max_abs_diff(half, g * id));
      if (std::abs(g.imag()) > kTol) real = false;
      gram[i * k + j] = g.real();
      gm(i, j) = g.real();
    }
  bool positive = false;
  if (v.anticommutator_residual <= kTol && real) {
    const auto ev = hermitian_eigenvalues(gm);
    positive = ev.front() > kTol;
    v.gram = gram;
  }
  v.anticommutator_form = v.anticommutator_residual <= kTol && real && positive;
  v.overall = v.anticommutator_form;
  return v;
}

GridMinimum brute_force_pencil(const std::vector<ComplexMatrix>& mats, int res) {
  check_shapes(mats);
  const int n = static_cast<int>(mats.size());
  if (n > 3) fail(ErrorCode::InvalidArgument, "brute_force_pencil: at most 3 matrices");
  if (res < 1) fail(ErrorCode::InvalidArgument, "brute_force_pencil: resolution must be positive");
  std::vector<RealVector> grid;
  if (n == 1) {
    grid = {{1.0}, {-1.0}};
  } else if (n == 2) {
    for (int k = 0; k < 2 * res; ++k) grid.push_back({std::cos(M_PI * k / res), std::sin(M_PI * k / res)});
  } else {
    for (int j = 0; j <= res; ++j)
      for (int k = 0; k < 2 * res; ++k) {
        const double th = M_PI * j / res, ph = M_PI * k / res;
        grid.push_back({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)});
        if (j == 0 || j == res) break;  // poles once
      }
  }
  const std::size_t d = mats.front().rows();
  GridMinimum best{std::numeric_limits<double>::infinity(), {}};
  for (const auto& x : grid) {
    ComplexMatrix p(d, d);
    for (int i = 0; i < n; ++i) p += x[static_cast<std::size_t>(i)] * mats[static_cast<std::size_t>(i)];
    const double a = std::abs(determinant(p));
    if (a < best.min_abs_det) best = {a, x};
  }
  return best;
}

std::vector<ComplexMatrix> rescaled_generators(int n) {
  auto gens = build_generators(n).generators;
  const auto eig = hermitian_eigen(gens.front());
  std::vector<cplx> diag;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    const double f = static_cast<double>(k / 2 + 2);
    diag.push_back(eig.eigenvalues[k] * (k % 2 == 0 ? f : 1.0 / f));
  }
  gens.front() = eig.eigenvectors * ComplexMatrix::diagonal(diag) * eig.eigenvectors.adjoint();
  return gens;
}

}  // namespace nct
