#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "negtype/certificate.hpp"
#include "negtype/space.hpp"

namespace negtype {

struct Embedding {
  Eigen::MatrixXd points;  // n x dim
  int dim = 0;
  double scale = 1.0;
};

struct EmbeddingStats {
  double expansion = 0.0;
  double contraction = 0.0;
  double distortion = 0.0;
};

struct SolverOptions {
  double rel_tol = 1e-4;       // relative bracket width on c2
  double feas_tol = 1e-6;      // relative feasibility tolerance
  int max_proj_iters = 50000;  // Dykstra iterations per bisection step
  int restarts = 32;           // dual-search restarts
  int search_iters = 400;      // ascent iterations per restart
  std::uint64_t seed = 20240817;
  bool want_certificate = true;
};

struct DistortionReport {
  double c2 = 1.0;
  double lo = 1.0;  // bracket on c2
  double hi = 1.0;
  Eigen::MatrixXd gram;
  Embedding embedding;
  std::optional<PSDCertificate> certificate;
  double certificate_ratio = 0.0;  // ratio achieved by `certificate`
};

struct DualSearchResult {
  PSDCertificate best;
  double ratio = 0.0;
  bool met_target = false;  // ratio >= target * (1 - rel_tol)
};

// Minimal Euclidean distortion of (X, d^{p/2}): bisection on t = C^2 with
// feasibility of {G psd, d_ij^p <= g_ii+g_jj-2g_ij <= t d_ij^p} decided by
// Dykstra alternating projections in squared-distance coordinates.
DistortionReport min_distortion(const SemiMetricSpace& X, double p,
                                const SolverOptions& opts = {});

// Factor a (nearly) PSD Gram matrix into points; negative eigenvalues up to
// -tol * ||G|| are clipped, anything lower throws NotPSD.
Embedding gram_to_embedding(const Eigen::MatrixXd& G, double tol = 1e-8);

// Expansion / contraction / distortion of e as a map (X, d^{p/2}) -> R^d.
// Throws CoincidentImages when two images coincide at positive distance.
EmbeddingStats embedding_stats(const SemiMetricSpace& X, double p,
                               const Embedding& e);

// Multi-start ascent of the certificate ratio over the spectrahedron
// {Q psd, Q1 = 0, tr Q = 1}; target is c2^2 from min_distortion.
DualSearchResult dual_certificate_search(const SemiMetricSpace& X, double p,
                                         double target,
                                         const SolverOptions& opts = {});

// Closed-form certificate when the distance matrix matches K_{m,n} or H_n
// exactly (canonical point order, up to a global scale).
std::optional<Eigen::MatrixXd> match_family_certificate(
    const SemiMetricSpace& X);

}  // namespace negtype
