#pragma once

#include <Eigen/Dense>

#include "negtype/certificate.hpp"
#include "negtype/classical.hpp"
#include "negtype/distortion.hpp"
#include "negtype/space.hpp"

namespace negtype {

enum class Rationale {
  p_below_supremal,
  C_above_c2,
  C_equals_c2,
  C_below_c2,
};

inline const char* rationale_name(Rationale r) {
  switch (r) {
    case Rationale::p_below_supremal: return "p_below_supremal";
    case Rationale::C_above_c2: return "C_above_c2";
    case Rationale::C_equals_c2: return "C_equals_c2";
    case Rationale::C_below_c2: return "C_below_c2";
  }
  return "?";
}

struct DistortedVerdict {
  Status status = Status::strict;
  Rationale rationale = Rationale::p_below_supremal;
  double c2_used = 1.0;
  double supremal_used = 0.0;
  bool supremal_at_cap = false;
  // Set when C lands inside the c2 bracket and the comparison is not decided
  // by the numerics.
  bool ambiguous = false;
};

struct GapEstimate {
  double value = 0.0;          // upper bound on the gap Delta_X(p, C)
  PSDCertificate argmin;       // normalized to pos = 1 (zero matrix if none)
  int restarts_used = 0;
  bool sign_confident = true;  // no entry sits inside the sign band
};

// Strictness via the characterization: strict iff p < supremal or C > c2.
// Comparisons are bracket-aware; landing inside a bracket reports nonstrict
// with the ambiguity flag set.
DistortedVerdict distorted_p_negative_type(const SemiMetricSpace& X, double p,
                                           double C,
                                           const SolverOptions& opts = {});

// Multi-start projected subgradient descent of f(p,C,Q)/pos(Q) over the
// certificate cone; the best iterate is renormalized to pos = 1. The value is
// an upper bound on the infimum.
GapEstimate gap_estimate(const SemiMetricSpace& X, double p, double C,
                         int restarts = 32,
                         const SolverOptions& opts = {});

// Independent brute-force bound for tests: random PSD draws of all ranks plus
// coordinate refinement. Requires n <= 6.
GapEstimate gap_oracle(const SemiMetricSpace& X, double p, double C,
                       int budget = 20000, std::uint64_t seed = 7);

// f(p, C, Q) = -C^2 sum_{q<0} d^p q - sum_{q>0} d^p q.
double gap_objective(const SemiMetricSpace& X, double p, double C,
                     const PSDCertificate& cert);

}  // namespace negtype
