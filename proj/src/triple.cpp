#include "nctorus/triple.hpp"

#include <array>
#include <cmath>
#include <string>

#include "nctorus/error.hpp"

namespace nct {

TauMatrix TauMatrix::identity(int n) {
  TauMatrix t{n, RealVector(static_cast<std::size_t>(n * n), 0.0)};
  for (int i = 0; i < n; ++i) t.entries[static_cast<std::size_t>(i * n + i)] = 1.0;
  return t;
}

RealVector TauMatrix::column(int j) const {
  RealVector c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = (*this)(i, j);
  return c;
}

double TauMatrix::det() const {
  ComplexMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = (*this)(i, j);
  return determinant(m).real();
}

namespace {

CSpace c_space_impl(int n) {
  const CliffordRep rep = build_generators(n);
  const std::size_t d = rep.spinor_dim();
  const ComplexMatrix& lam = rep.reality;
  const ComplexMatrix lam_adj = lam.adjoint();
  const double eps_D = rep.signs.eps_D;
  const bool even = n % 2 == 0;

  std::vector<ComplexMatrix> herm;
  for (std::size_t i = 0; i < d; ++i) {
    ComplexMatrix h(d, d);
    h(i, i) = 1.0;
    herm.push_back(h);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      ComplexMatrix re(d, d), im(d, d);
      re(i, j) = re(j, i) = 1.0;
      im(i, j) = cplx(0.0, 1.0);
      im(j, i) = cplx(0.0, -1.0);
      herm.push_back(re);
      herm.push_back(im);
    }

  const std::size_t blocks = even ? 2 : 1;
  ComplexMatrix system(blocks * 2 * d * d, herm.size());
  for (std::size_t k = 0; k < herm.size(); ++k) {
    const ComplexMatrix& h = herm[k];
    std::vector<ComplexMatrix> res{lam * h.conj() * lam_adj - eps_D * h};
    if (even) res.push_back(rep.grading * h + h * rep.grading);
    for (std::size_t b = 0; b < res.size(); ++b)
      for (std::size_t q = 0; q < d * d; ++q) {
        system((b * d * d + q) * 2, k) = res[b].entries()[q].real();
        system((b * d * d + q) * 2 + 1, k) = res[b].entries()[q].imag();
      }
  }
  const ComplexMatrix ns = nullspace(system, 1e-10);

  CSpace out;
  for (std::size_t c = 0; c < ns.cols(); ++c) {
    ComplexMatrix m(d, d);
    for (std::size_t k = 0; k < herm.size(); ++k) m += ns(k, c).real() * herm[k];
    for (const auto& b : out.basis) m -= (b.adjoint() * m).trace().real() * b;
    const double norm = frobenius_norm(m);
    if (norm < 1e-12) continue;
    out.basis.push_back((1.0 / norm) * m);
  }
  out.dimension = static_cast<int>(out.basis.size());
  return out;
}

}  // namespace

CSpace solve_C_space(int n) {
  if (n < 2 || n > kMaxDimension) fail(ErrorCode::UnsupportedDimension, "solve_C_space: n must be in 2..8");
  return c_space_impl(n);
}

double c_space_residual(const CSpace& space, const ComplexMatrix& c) {
  ComplexMatrix r = c;
  for (const auto& b : space.basis) r -= (b.adjoint() * c).trace().real() * b;
  return max_abs(r);
}

AssembledTriple::AssembledTriple(const TripleConfig& config) : config_(config) {
  const int n = config.n;
  if (n < 1 || n > kMaxDimension) fail(ErrorCode::UnsupportedDimension, "dimension out of range 1..8");
  if (config.theta.n() != n) fail(ErrorCode::InvalidConfig, "theta has wrong dimension");
  if (config.tau.n != n || config.tau.entries.size() != static_cast<std::size_t>(n * n))
    fail(ErrorCode::InvalidConfig, "tau has wrong shape");
  if (std::abs(config.tau.det()) <= 1e-9) fail(ErrorCode::InvalidConfig, "tau is singular");
  rep_ = build_generators(n);
  const std::size_t d = rep_.spinor_dim();
  lattice_ = TruncatedLattice(n, config.eps, config.cutoff, d);
  a_ = canonical_A(config.theta);
  c_ = config.C.empty() ? ComplexMatrix(d, d) : config.C;
  if (c_.rows() != d || c_.cols() != d)
    fail(ErrorCode::InvalidConfig, "C must be " + std::to_string(d) + "x" + std::to_string(d));
  if (max_abs(c_) > 0.0) {
    c_residual_ = c_space_residual(c_space_impl(n), c_);
    if (c_residual_ > 1e-10) fail(ErrorCode::InvalidConfig, "C is outside the admissible constant-term space");
  }
  for (const auto& g : rep_.generators)
    for (std::size_t k = 0; k < g.entries().size(); ++k)
      if (g.entries()[k] != cplx(0.0, 0.0)) sparse_gens_.push_back({&g - rep_.generators.data(), k, g.entries()[k]});
}

ComplexMatrix AssembledTriple::dirac_block(const Site& s) const {
  if (!lattice_.contains(s)) fail(ErrorCode::IndexError, "site outside the truncated lattice");
  ComplexMatrix d = c_;
  const int n = config_.n;
  std::array<double, kMaxDimension> coeff{};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) coeff[static_cast<std::size_t>(j)] += config_.tau(i, j) * lattice_.mu(s, i);
  auto& out = d.entries();
  for (const auto& e : sparse_gens_) out[e.index] += coeff[static_cast<std::size_t>(e.generator)] * e.value;
  return d;
}

LatticeOperator AssembledTriple::dirac() const {
  return LatticeOperator([this](const Site& s) -> std::optional<SiteImage> {
    return SiteImage{s, dirac_block(s), 1.0};
  });
}

LatticeOperator AssembledTriple::reality() const {
  return LatticeOperator(
      [this](const Site& s) -> std::optional<SiteImage> {
        double q = 0.0;
        for (int i = 0; i < a_.n; ++i)
          for (int j = 0; j < a_.n; ++j) q += lattice_.mu(s, i) * a_(i, j) * lattice_.mu(s, j);
        return SiteImage{lattice_.negate(s), ComplexMatrix(), phase(q), &rep_.reality};
      },
      true);
}

LatticeOperator AssembledTriple::grading() const {
  if (config_.n % 2 != 0) fail(ErrorCode::InvalidArgument, "grading exists only for even n");
  return LatticeOperator([this](const Site& s) -> std::optional<SiteImage> {
    return SiteImage{s, ComplexMatrix(), 1.0, &rep_.grading};
  });
}

AssembledTriple assemble(const TripleConfig& config) { return AssembledTriple(config); }

ComplexMatrix dirac_block(const AssembledTriple& t, const Site& s) { return t.dirac_block(s); }

std::vector<double> full_spectrum(const AssembledTriple& t) {
  const auto& lat = t.lattice();
  std::vector<double> out;
  out.reserve(lat.dimension());
  for (std::size_t k = 0; k < lat.site_count(); ++k) {
    const auto ev = hermitian_eigenvalues(t.dirac_block(lat.site(k)));
    out.insert(out.end(), ev.begin(), ev.end());
  }
  return out;
}

std::size_t kernel_dimension(const std::vector<double>& spectrum, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "kernel tolerance must be positive");
  std::size_t k = 0;
  for (double x : spectrum)
    if (std::abs(x) <= tol) ++k;
  return k;
}

std::size_t kernel_dimension(const AssembledTriple& t, double tol) { return kernel_dimension(full_spectrum(t), tol); }

std::vector<cplx> apply_J(const AssembledTriple& t, const std::vector<cplx>& v) {
  return apply(t.reality(), t.lattice(), v);
}

}  // namespace nct
