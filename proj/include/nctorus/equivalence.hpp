#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nctorus/axioms.hpp"
#include "nctorus/torus.hpp"
#include "nctorus/triple.hpp"

namespace nct {

struct IntMatrix {
  int n = 0;
  std::vector<long> entries;  // row-major

  static IntMatrix identity(int n);
  long operator()(int i, int j) const { return entries[static_cast<std::size_t>(i * n + j)]; }
  long det() const;
  IntMatrix inverse() const;  // requires det = +-1
  IntMatrix operator*(const IntMatrix& o) const;
  IntVector apply(const IntVector& v) const;
  bool operator==(const IntMatrix& o) const { return n == o.n && entries == o.entries; }
};

// SL(2,Z) element; throws unless 2x2 with determinant 1.
IntMatrix sl2(long a, long b, long c, long d);
IntMatrix sl2_M();  // [[1,0],[-1,1]]
IntMatrix sl2_N();  // [[1,-1],[0,1]]

// Words in M, N, M^-1, N^-1, written left to right and applied right to left, e.g. "NM^-1".
IntMatrix word_matrix(const std::string& word);

SpinStructure act_on_spin(const IntMatrix& sigma, const SpinStructure& eps);
SpinStructure flip_action(const SpinStructure& eps);
std::string spin_label(const SpinStructure& eps);  // e.g. "eps10"

struct Arrow {
  SpinStructure from, to;
  std::string word;
};

struct Orbit {
  std::vector<SpinStructure> members;
  std::vector<Arrow> arrows;  // one witness for every ordered pair of distinct members
};

// n = 2: SL(2,Z) closure under {M, N, M^-1, N^-1}; n > 2: the flip +-Id.
std::vector<Orbit> orbits(int n);

struct WResult {
  SpinStructure target_eps;
  TripleConfig target_config;
  double u_residual = 0.0;
  double d_residual = 0.0;
  double j_residual = 0.0;
  double gamma_residual = 0.0;
  std::size_t interior_sites = 0;
  VerificationReport report;
};

// Conjugation by W e_mu = e_{sigma mu} followed by the diagonal change of representation.
// The transformed Dirac vectors are sigma^{-T} tau^j; literal_tau uses sigma^{-1} tau^j instead.
WResult build_W(const IntMatrix& sigma, const AssembledTriple& t, double tol = 1e-10, bool literal_tau = false);

struct ObstructionVerdict {
  bool obstructed = false;
  std::string verdict;            // "obstructed" or "unobstructed-necessary-condition"
  std::optional<RealVector> witness;  // v with theta v ~ 0
};

ObstructionVerdict inner_obstruction(const ThetaMatrix& theta, const SpinStructure& eps,
                                     const SpinStructure& eps_tilde, const IntMatrix& sigma, int search_box);

}  // namespace nct
