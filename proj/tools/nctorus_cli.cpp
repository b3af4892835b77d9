// Command-line front end; talks to the library only through the C API.
#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nctorus.h"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  std::string out_path;
  std::vector<std::string> tolerances;
  std::optional<int> cutoff;
  std::optional<std::uint64_t> seed;
  bool json = false;
  int n = 0;
  std::string matrix_path;
};

std::string take(char* s) {
  std::string out = s ? s : "";
  nct_string_free(s);
  return out;
}

void check(nct_status st) {
  if (st != NCT_OK) throw UsageError(nct_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, r.ptr};
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) throw UsageError("cannot write '" + opt.out_path + "'");
}

// Owns a parsed config with the command-line overrides applied.
struct Config {
  nct_config* handle = nullptr;
  explicit Config(const Options& opt) {
    if (opt.config_path.empty()) throw UsageError("--config is required");
    check(nct_config_parse(read_file(opt.config_path).c_str(), &handle));
    if (opt.cutoff) check(nct_config_set_cutoff(handle, *opt.cutoff));
    if (opt.seed) check(nct_config_set_seed(handle, *opt.seed));
    for (const auto& kv : opt.tolerances) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw UsageError("--tol expects NAME=VALUE, got '" + kv + "'");
      const std::string name = kv.substr(0, eq), text = kv.substr(eq + 1);
      double value = 0.0;
      const auto r = std::from_chars(text.data(), text.data() + text.size(), value);
      if (r.ec != std::errc() || r.ptr != text.data() + text.size()) throw UsageError("--tol value for '" + name + "' is not a number");
      check(nct_config_set_tolerance(handle, name.c_str(), value));
    }
  }
  ~Config() { nct_config_free(handle); }
  Config(const Config&) = delete;
  Config& operator=(const Config&) = delete;
};

std::string verify_text(const nlohmann::ordered_json& r) {
  std::ostringstream os;
  for (const auto& c : r["checks"]) {
    os << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["check"].get<std::string>() << " residual="
       << format_double(c["max_residual"].get<double>()) << " tol=" << format_double(c["tolerance"].get<double>()) << '\n';
  }
  os << "overall " << (r["overall"].get<bool>() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

int cmd_verify(const Options& opt) {
  Config cfg(opt);
  char* raw = nullptr;
  int pass = 0;
  check(nct_verify(cfg.handle, &raw, &pass));
  const std::string report = take(raw);
  emit(opt, opt.json ? report + "\n" : verify_text(nlohmann::ordered_json::parse(report)));
  return pass ? kPass : kFail;
}

int cmd_spectrum(const Options& opt) {
  Config cfg(opt);
  nct_triple* t = nullptr;
  check(nct_triple_assemble(cfg.handle, &t));
  struct Free {
    nct_triple* t;
    ~Free() { nct_triple_free(t); }
  } guard{t};
  size_t count = 0;
  check(nct_triple_spectrum(t, nullptr, 0, &count));
  std::vector<double> s(count);
  check(nct_triple_spectrum(t, s.data(), s.size(), &count));
  std::sort(s.begin(), s.end());
  std::string lines;
  for (double x : s) lines += format_double(x) + '\n';
  if (opt.out_path.empty()) throw UsageError("spectrum requires --out PATH");
  emit(opt, lines);
  char* raw = nullptr;
  check(nct_triple_summary(t, 1e-8, &raw));
  std::cout << take(raw) << '\n';
  return kPass;
}

int cmd_orbit(const Options& opt) {
  char* raw = nullptr;
  check(nct_orbits(opt.n, &raw));
  const std::string report = take(raw);
  if (opt.json) {
    emit(opt, report + "\n");
    return kPass;
  }
  const auto r = nlohmann::ordered_json::parse(report);
  std::ostringstream os;
  os << "group: " << r["group"].get<std::string>() << '\n';
  for (const auto& o : r["orbits"]) {
    os << "orbit {";
    bool first = true;
    for (const auto& m : o["members"]) os << (first ? "" : ", ") << m.get<std::string>(), first = false;
    os << "}\n";
    for (const auto& a : o["arrows"])
      os << "  " << a["from"].get<std::string>() << " -> " << a["to"].get<std::string>() << " via "
         << a["word"].get<std::string>() << '\n';
  }
  emit(opt, os.str());
  return kPass;
}

int cmd_clifford(const Options& opt) {
  const std::string path = !opt.matrix_path.empty() ? opt.matrix_path : opt.config_path;
  if (path.empty()) throw UsageError("clifford-check needs a matrix file");
  char* raw = nullptr;
  int pass = 0;
  check(nct_clifford_check(read_file(path).c_str(), opt.seed.value_or(0), &raw, &pass));
  const std::string verdict = take(raw);
  emit(opt, verdict + "\n");
  return pass ? kPass : kFail;
}

int cmd_c_space(const Options& opt) {
  char* raw = nullptr;
  check(nct_c_space(opt.n, &raw));
  emit(opt, take(raw) + "\n");
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral triples on the noncommutative torus"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out_path, "Output file");
    sub->add_option("--tol", opt.tolerances, "Tolerance override NAME=VALUE")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    sub->add_option("--cutoff", opt.cutoff, "Lattice cutoff M");
    sub->add_option("--seed", opt.seed, "Random seed");
    sub->add_flag("--json", opt.json, "Print machine-readable JSON");
  };

  auto* verify = app.add_subcommand("verify", "Run the verification suite on a config");
  verify->add_option("--config,config", opt.config_path, "Config JSON file");
  add_common(verify);

  auto* spectrum = app.add_subcommand("spectrum", "Write the Dirac spectrum and print a summary");
  spectrum->add_option("--config,config", opt.config_path, "Config JSON file");
  add_common(spectrum);

  auto* orbit = app.add_subcommand("orbit", "List spin-structure orbits");
  orbit->add_option("--n,n", opt.n, "Torus dimension")->required();
  add_common(orbit);

  auto* clifford = app.add_subcommand("clifford-check", "Test whether matrices generate a Clifford algebra");
  clifford->add_option("file", opt.matrix_path, "Matrix JSON file");
  clifford->add_option("--config", opt.config_path, "Matrix JSON file");
  add_common(clifford);

  auto* cspace = app.add_subcommand("c-space", "Solve for the admissible constant matrices C");
  cspace->add_option("--n,n", opt.n, "Torus dimension")->required();
  add_common(cspace);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(opt);
    if (spectrum->parsed()) return cmd_spectrum(opt);
    if (orbit->parsed()) return cmd_orbit(opt);
    if (clifford->parsed()) return cmd_clifford(opt);
    if (cspace->parsed()) return cmd_c_space(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
