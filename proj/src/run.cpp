#include "nctorus/run.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <json.hpp>

#include "nctorus/axioms.hpp"
#include "nctorus/cliffordcheck.hpp"
#include "nctorus/equivalence.hpp"
#include "nctorus/error.hpp"

namespace nct {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& msg) {
  fail(ErrorCode::InvalidConfig, "config field '" + field + "': " + msg);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) bad(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(field, "must be finite");
  return v;
}

int integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) bad(field, "expected an integer");
  return j.get<int>();
}

cplx complex_entry(const json& j, const std::string& field) {
  if (j.is_number()) return number(j, field);
  if (!j.is_array() || j.size() != 2) bad(field, "expected [re, im]");
  return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
}

ComplexMatrix matrix_from(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) bad(field, "expected a non-empty list of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  std::vector<cplx> e;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rf = field + "[" + std::to_string(r) + "]";
    if (!j[r].is_array()) bad(rf, "expected a row");
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols) bad(rf, "ragged row");
    for (std::size_t c = 0; c < cols; ++c) e.push_back(complex_entry(j[r][c], rf + "[" + std::to_string(c) + "]"));
  }
  return ComplexMatrix(rows, cols, std::move(e));
}

json complex_json(cplx z) {
  if (z.imag() == 0.0) return z.real();
  return json{{"re", z.real()}, {"im", z.imag()}};
}

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

json report_json(const VerificationReport& r) {
  json c = json::object();
  for (const auto& nv : r.constants) c[nv.name] = complex_json(nv.value);
  json j{{"check", r.check},
         {"pass", r.pass},
         {"max_residual", r.max_residual},
         {"tolerance", r.tolerance},
         {"interior_sites", r.interior_sites},
         {"required_sites", r.required_sites},
         {"constants", c}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

bool is_prime(int p) {
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return p > 1;
}

}  // namespace

void Tolerances::set(const std::string& name, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) fail(ErrorCode::InvalidConfig, "tolerance '" + name + "' must be positive");
  if (name == "signs") signs = value;
  else if (name == "equivariance") equivariance = value;
  else if (name == "order") order = value;
  else if (name == "hochschild") hochschild = value;
  else if (name == "c_space") c_space = value;
  else if (name == "kernel") kernel = value;
  else fail(ErrorCode::InvalidConfig, "unknown tolerance '" + name + "'");
}

RealVector default_theta(int n) {
  RealVector t;
  int p = 1;
  for (int k = 0; k < n * (n - 1) / 2; ++k) {
    do ++p; while (!is_prime(p));
    const double r = std::sqrt(static_cast<double>(p));
    t.push_back(r - std::floor(r));
  }
  return t;
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::InvalidConfig, "config must be a JSON object");
  static const std::vector<std::string> known{"n", "theta", "epsilon", "tau", "C", "cutoff", "tolerances", "seed", "pair_radius"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) bad(it.key(), "unknown field");

  RunConfig cfg;
  if (!j.contains("n")) bad("n", "required");
  const int n = integer(j["n"], "n");
  if (n < 1 || n > kMaxDimension) bad("n", "must be in 1..8");
  auto& t = cfg.triple;
  t.n = n;

  RealVector theta = default_theta(n);
  if (j.contains("theta")) {
    const auto& a = j["theta"];
    if (!a.is_array() || a.size() != theta.size())
      bad("theta", "expected " + std::to_string(theta.size()) + " strict upper-triangle entries");
    for (std::size_t k = 0; k < a.size(); ++k) theta[k] = number(a[k], "theta[" + std::to_string(k) + "]");
  }
  t.theta = ThetaMatrix::from_upper(n, theta);

  t.eps.assign(static_cast<std::size_t>(n), 0);
  if (j.contains("epsilon")) {
    const auto& a = j["epsilon"];
    if (!a.is_array() || a.size() != static_cast<std::size_t>(n)) bad("epsilon", "expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < a.size(); ++k) {
      const std::string f = "epsilon[" + std::to_string(k) + "]";
      const double v = number(a[k], f);
      if (v == 0.0)
        t.eps[k] = 0;
      else if (v == 0.5)
        t.eps[k] = 1;
      else
        bad(f, "must be 0 or 0.5");
    }
  }

  t.tau = TauMatrix::identity(n);
  if (j.contains("tau")) {
    const auto& a = j["tau"];
    json flat = json::array();
    if (a.is_array() && !a.empty() && a[0].is_array()) {
      if (a.size() != static_cast<std::size_t>(n)) bad("tau", "expected n rows");
      for (std::size_t r = 0; r < a.size(); ++r) {
        if (!a[r].is_array() || a[r].size() != static_cast<std::size_t>(n)) bad("tau[" + std::to_string(r) + "]", "expected n entries");
        for (const auto& v : a[r]) flat.push_back(v);
      }
    } else {
      flat = a;
    }
    if (!flat.is_array() || flat.size() != static_cast<std::size_t>(n * n)) bad("tau", "expected n*n row-major entries");
    for (std::size_t k = 0; k < flat.size(); ++k) t.tau.entries[k] = number(flat[k], "tau[" + std::to_string(k) + "]");
    if (std::abs(t.tau.det()) <= 1e-9) bad("tau", "columns must be linearly independent");
  }

  if (j.contains("C")) {
    t.C = matrix_from(j["C"], "C");
    const std::size_t d = std::size_t{1} << (n / 2);
    if (t.C.rows() != d || t.C.cols() != d) bad("C", "must be " + std::to_string(d) + "x" + std::to_string(d));
  }

  if (j.contains("cutoff")) {
    t.cutoff = integer(j["cutoff"], "cutoff");
    if (t.cutoff < 1) bad("cutoff", "must be positive");
  }
  if (j.contains("pair_radius")) {
    cfg.pair_radius = integer(j["pair_radius"], "pair_radius");
    if (cfg.pair_radius < 0) bad("pair_radius", "must be non-negative");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
      bad("seed", "expected a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("tolerances")) {
    const auto& o = j["tolerances"];
    if (!o.is_object()) bad("tolerances", "expected an object");
    for (auto it = o.begin(); it != o.end(); ++it) cfg.tol.set(it.key(), number(it.value(), "tolerances." + it.key()));
  }
  return cfg;
}

namespace {

json config_obj(const RunConfig& cfg) {
  const auto& t = cfg.triple;
  json eps = json::array();
  for (int b : t.eps) eps.push_back(0.5 * b);
  json j{{"n", t.n},
         {"theta", t.theta.upper()},
         {"epsilon", eps},
         {"tau", t.tau.entries},
         {"cutoff", t.cutoff},
         {"pair_radius", cfg.pair_radius},
         {"seed", cfg.seed},
         {"tolerances",
          {{"signs", cfg.tol.signs},
           {"equivariance", cfg.tol.equivariance},
           {"order", cfg.tol.order},
           {"hochschild", cfg.tol.hochschild},
           {"c_space", cfg.tol.c_space},
           {"kernel", cfg.tol.kernel}}}};
  if (!t.C.empty()) j["C"] = matrix_json(t.C);
  return j;
}

json summary_obj(const std::vector<double>& spectrum, double kernel_tol) {
  double min_abs = INFINITY;
  for (double x : spectrum) min_abs = std::min(min_abs, std::abs(x));
  json s{{"count", spectrum.size()}, {"min_abs", min_abs}, {"kernel_dim", kernel_dimension(spectrum, kernel_tol)}};
  try {
    s["weyl_slope"] = spectral_dimension(spectrum, 0.25, 0.5, kernel_tol);
  } catch (const Error&) {
    s["weyl_slope"] = nullptr;
  }
  return s;
}

}  // namespace

std::string config_json(const RunConfig& cfg) { return config_obj(cfg).dump(2); }

std::string verify_json(const RunConfig& cfg, bool& overall) {
  const AssembledTriple t(cfg.triple);
  std::vector<VerificationReport> reports;
  reports.push_back(check_signs(t, cfg.tol.signs));
  reports.push_back(check_equivariance(t, cfg.tol.equivariance));
  for (auto& r : check_order_conditions(t, cfg.pair_radius, cfg.tol.order)) reports.push_back(r);
  if (t.n() <= 6) reports.push_back(check_hochschild(t, cfg.tol.hochschild).report);
  VerificationReport c;
  c.check = "c_space_membership";
  c.max_residual = t.c_membership_residual();
  c.tolerance = cfg.tol.c_space;
  c.finish();
  reports.push_back(c);

  overall = true;
  json checks = json::array();
  for (const auto& r : reports) {
    overall = overall && r.pass;
    checks.push_back(report_json(r));
  }
  const auto spectrum = full_spectrum(t);
  json out{{"config", config_obj(cfg)},
           {"checks", checks},
           {"spectrum", summary_obj(spectrum, cfg.tol.kernel)},
           {"overall", overall}};
  return out.dump(2);
}

std::string spectrum_summary_json(const AssembledTriple& t, const std::vector<double>& spectrum, double kernel_tol) {
  json s = summary_obj(spectrum, kernel_tol);
  s["n"] = t.n();
  s["sites"] = t.lattice().site_count();
  s["spinor_dim"] = t.lattice().spinor_mult();
  return s.dump(2);
}

std::string orbits_json(int n) {
  json list = json::array();
  for (const auto& o : orbits(n)) {
    json members = json::array(), arrows = json::array();
    for (const auto& m : o.members) members.push_back(spin_label(m));
    for (const auto& a : o.arrows) arrows.push_back({{"from", spin_label(a.from)}, {"to", spin_label(a.to)}, {"word", a.word}});
    list.push_back({{"members", members}, {"arrows", arrows}});
  }
  json out{{"n", n}, {"group", n == 2 ? "SL(2,Z) generated by M, N" : "flip {Id, -Id}"}, {"orbits", list}};
  return out.dump(2);
}

std::vector<ComplexMatrix> parse_matrices(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InvalidConfig, std::string("matrix file is not valid JSON: ") + e.what());
  }
  if (j.is_object()) {
    if (!j.contains("matrices")) bad("matrices", "required");
    j = j["matrices"];
  }
  if (!j.is_array() || j.empty()) bad("matrices", "expected a non-empty list of matrices");
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(matrix_from(j[k], "matrices[" + std::to_string(k) + "]"));
    if (!out.back().square()) bad("matrices[" + std::to_string(k) + "]", "must be square");
    if (out.back().rows() != out.front().rows()) bad("matrices[" + std::to_string(k) + "]", "size differs from matrices[0]");
  }
  return out;
}

std::string clifford_check_json(const std::vector<ComplexMatrix>& mats, std::uint64_t seed, bool& overall) {
  const auto v = clifford_check(mats, 4096, seed);
  overall = v.overall;
  json gram = nullptr;
  if (!v.gram.empty()) gram = v.gram;
  json out{{"count", mats.size()},
           {"size", mats.front().rows()},
           {"is_hermitian", v.is_hermitian},
           {"hermiticity_defect", v.hermiticity_defect},
           {"pencil_nonsingular", v.pencil_nonsingular},
           {"pencil_min_singular", v.pencil_min_singular},
           {"antisym_scalar", v.antisym_scalar},
           {"lambda", {{"re", v.lambda.real()}, {"im", v.lambda.imag()}}},
           {"antisym_residual", v.antisym_residual},
           {"anticommutator_form", v.anticommutator_form},
           {"gram", gram},
           {"anticommutator_residual", v.anticommutator_residual},
           {"seed", v.seed},
           {"overall", v.overall}};
  return out.dump(2);
}

std::string c_space_json(int n) {
  const CSpace s = solve_C_space(n);
  json basis = json::array();
  for (const auto& b : s.basis) basis.push_back(matrix_json(b));
  json out{{"n", n}, {"real_dimension", s.dimension}, {"basis", basis}};
  return out.dump(2);
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace nct
