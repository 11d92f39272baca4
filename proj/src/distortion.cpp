#include "negtype/distortion.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "negtype/kernels.hpp"
#include "negtype/linalg.hpp"

namespace negtype {

namespace {

struct FeasResult {
  bool feasible = false;
  Eigen::MatrixXd D;    // last box-feasible iterate
  double gap = 0.0;     // distance between the two projections at exit
};

// Projection onto {D symmetric : x^T D x <= 0 for all x perp 1}. Only the
// mean-zero block of D moves (Hayden-Wells decomposition).
Eigen::MatrixXd proj_almost_nsd(const Eigen::MatrixXd& d,
                                const Eigen::MatrixXd& v) {
  Eigen::MatrixXd b = v.transpose() * d * v;
  return d + v * (nsd_project(b) - b) * v.transpose();
}

// Dykstra alternating projections between the almost-NSD cone and the
// entrywise box {w_ij <= D_ij <= t w_ij off-diagonal, zero diagonal}.
FeasResult box_cone_feasibility(const Eigen::MatrixXd& w, double t,
                                const Eigen::MatrixXd& v,
                                Eigen::MatrixXd start, int max_iters,
                                double tol_abs) {
  const auto n = w.rows();
  Eigen::MatrixXd lo = w, hi = t * w;
  lo.diagonal().setZero();
  hi.diagonal().setZero();

  Eigen::MatrixXd x = std::move(start);
  Eigen::MatrixXd p_inc = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd q_inc = Eigen::MatrixXd::Zero(n, n);

  FeasResult res;
  double prev_window_gap = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < max_iters; ++iter) {
    Eigen::MatrixXd y = proj_almost_nsd(x + p_inc, v);
    p_inc = x + p_inc - y;
    Eigen::MatrixXd z = y + q_inc;
    Eigen::MatrixXd xn = z;
    kernels::clip_box(xn.data(), lo.data(), hi.data(), xn.size());
    q_inc = z - xn;
    double gap = (xn - y).cwiseAbs().maxCoeff();
    x = std::move(xn);
    res.gap = gap;
    if (gap <= tol_abs) {
      res.feasible = true;
      res.D = x;
      return res;
    }
    // Infeasible instances stall at a positive separation; bail out once the
    // gap stops moving and is far above tolerance.
    if ((iter + 1) % 500 == 0) {
      if (gap > 50.0 * tol_abs && gap > 0.999 * prev_window_gap) break;
      prev_window_gap = gap;
    }
  }
  res.D = x;
  return res;
}

Eigen::MatrixXd gram_from_sq_dists(const Eigen::MatrixXd& d) {
  const auto n = d.rows();
  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(n, n) -
                      Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  return -0.5 * j * d * j;
}

double ratio_of(const SemiMetricSpace& X, double p, const Eigen::MatrixXd& q) {
  const double max_abs = q.cwiseAbs().maxCoeff();
  if (max_abs == 0.0) return 0.0;
  Eigen::MatrixXd w = power_transform(X, p).dist;
  auto sums = kernels::sign_split_weighted(w.data(), q.data(), q.size(),
                                           1e-9 * max_abs);
  if (sums.neg >= 0.0) return 0.0;
  return sums.pos / (-sums.neg);
}

bool is_equilateral(const Eigen::MatrixXd& w) {
  const auto n = w.rows();
  double a = w(0, 1);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j && std::abs(w(i, j) - a) > 1e-12 * a) return false;
  return true;
}

Eigen::MatrixXd equilateral_gram(Eigen::Index n, double w) {
  // Regular simplex with squared side w: G = (w/2)(I - J/n).
  return (w / 2.0) * (Eigen::MatrixXd::Identity(n, n) -
                      Eigen::MatrixXd::Constant(n, n, 1.0 / n));
}

}  // namespace

std::optional<Eigen::MatrixXd> match_family_certificate(
    const SemiMetricSpace& X) {
  const int n = X.n();
  const Eigen::MatrixXd& d = X.dist;
  double a = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) a = std::min(a, d(i, j));
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y)); };

  // Hamming cube in lexicographic order, up to a global scale.
  if (n >= 4 && std::has_single_bit(static_cast<unsigned>(n))) {
    const int cube = std::countr_zero(static_cast<unsigned>(n));
    bool ok = cube >= 2;
    for (int i = 0; ok && i < n; ++i)
      for (int j = 0; ok && j < n; ++j) {
        int h = std::popcount(static_cast<unsigned>(i ^ j));
        if (h == 0 ? d(i, j) != 0.0 : !close(d(i, j), a * h)) ok = false;
      }
    if (ok) {
      Eigen::MatrixXd q(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          int h = std::popcount(static_cast<unsigned>(i ^ j));
          q(i, j) = (i == j) ? cube - 1.0 : (h == 1 ? -1.0 : (h == cube ? 1.0 : 0.0));
        }
      return q;
    }
  }

  // Complete bipartite: distances {a, 2a}, "far" pairs form the two parts.
  {
    bool two_valued = true;
    for (int i = 0; i < n && two_valued; ++i)
      for (int j = i + 1; j < n && two_valued; ++j)
        if (!close(d(i, j), a) && !close(d(i, j), 2.0 * a)) two_valued = false;
    if (two_valued) {
      std::vector<int> part(n, 1);
      part[0] = 0;
      for (int i = 1; i < n; ++i)
        if (close(d(0, i), 2.0 * a)) part[i] = 0;
      bool ok = true;
      int m = 0;
      for (int i = 0; i < n; ++i) m += (part[i] == 0);
      int k = n - m;
      if (m < 1 || k < 1 || (m == 1 && k == 1)) ok = false;
      for (int i = 0; i < n && ok; ++i)
        for (int j = i + 1; j < n && ok; ++j) {
          double expect = (part[i] == part[j]) ? 2.0 * a : a;
          if (!close(d(i, j), expect)) ok = false;
        }
      if (ok) {
        Eigen::VectorXd xi(n);
        for (int i = 0; i < n; ++i)
          xi(i) = part[i] == 0 ? 1.0 / m : -1.0 / k;
        return Eigen::MatrixXd(xi * xi.transpose());
      }
    }
  }
  return std::nullopt;
}

Embedding gram_to_embedding(const Eigen::MatrixXd& G, double tol) {
  const auto n = G.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 *
                                                    (G + G.transpose()));
  const double norm = es.eigenvalues().size()
                          ? es.eigenvalues().cwiseAbs().maxCoeff()
                          : 0.0;
  Embedding e;
  if (norm == 0.0) {
    e.points = Eigen::MatrixXd::Zero(n, 0);
    return e;
  }
  if (es.eigenvalues().minCoeff() < -tol * norm)
    throw Error(ErrKind::NotPSD, "gram matrix has a significantly negative eigenvalue");
  int dim = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (es.eigenvalues()(i) > tol * norm) ++dim;
  e.dim = dim;
  e.points = Eigen::MatrixXd(n, dim);
  // Largest eigenvalues first.
  for (int k = 0; k < dim; ++k) {
    Eigen::Index idx = n - 1 - k;
    e.points.col(k) =
        es.eigenvectors().col(idx) * std::sqrt(es.eigenvalues()(idx));
  }
  return e;
}

EmbeddingStats embedding_stats(const SemiMetricSpace& X, double p,
                               const Embedding& e) {
  const int n = X.n();
  if (e.points.rows() != n)
    throw Error(ErrKind::BadParams, "embedding size does not match space");
  Eigen::MatrixXd dp2 = power_transform(X, p / 2.0).dist;
  EmbeddingStats stats;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double num = (e.points.row(i) - e.points.row(j)).norm();
      double den = dp2(i, j);
      if (num == 0.0)
        throw Error(ErrKind::CoincidentImages,
                    "two images coincide at positive distance");
      stats.expansion = std::max(stats.expansion, num / den);
      stats.contraction = std::max(stats.contraction, den / num);
    }
  stats.distortion = stats.expansion * stats.contraction;
  return stats;
}

DualSearchResult dual_certificate_search(const SemiMetricSpace& X, double p,
                                         double target,
                                         const SolverOptions& opts) {
  const int n = X.n();
  Eigen::MatrixXd v = meanzero_basis(n);
  Eigen::MatrixXd w = power_transform(X, p).dist;
  const double max_w = w.maxCoeff();
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto normalized = [](Eigen::MatrixXd q) {
    double tr = q.trace();
    if (tr > 0.0) q /= tr;
    return q;
  };

  // Projected subgradient ascent on the sign-split ratio; piecewise linear,
  // so diminishing steps with the best iterate kept.
  auto ascend = [&](Eigen::MatrixXd q, double* best_ratio,
                    Eigen::MatrixXd* best_q) {
    q = normalized(cone_project(q, v));
    for (int iter = 0; iter < opts.search_iters; ++iter) {
      double max_abs = q.cwiseAbs().maxCoeff();
      if (max_abs == 0.0) return;
      double eps = 1e-9 * max_abs;
      auto sums = kernels::sign_split_weighted(w.data(), q.data(), q.size(), eps);
      if (sums.neg < 0.0) {
        double r = sums.pos / (-sums.neg);
        if (r > *best_ratio) {
          *best_ratio = r;
          *best_q = q;
        }
      }
      double lambda = (sums.neg < 0.0) ? sums.pos / (-sums.neg) : 1.0;
      Eigen::MatrixXd grad(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double qe = q(i, j);
          grad(i, j) = qe > eps ? w(i, j) : (qe < -eps ? lambda * w(i, j) : 0.0);
        }
      double gnorm = grad.norm();
      if (gnorm == 0.0 || max_w == 0.0) return;
      double step = 0.25 / (1.0 + iter / 40.0);
      q = normalized(cone_project(q + (step / gnorm) * grad, v));
    }
  };

  double best_ratio = 0.0;
  Eigen::MatrixXd best_q = Eigen::MatrixXd::Zero(n, n);

  if (auto fam = match_family_certificate(X)) {
    double r = ratio_of(X, p, *fam);
    if (r > best_ratio) {
      best_ratio = r;
      best_q = *fam;
    }
    ascend(*fam, &best_ratio, &best_q);
  }

  // Rank-1 seeds from the top of the restricted power form.
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v.transpose() * w * v);
    for (int k = 0; k < std::min(3, n - 1); ++k) {
      Eigen::VectorXd xi = v * es.eigenvectors().col(n - 2 - k);
      ascend(xi * xi.transpose(), &best_ratio, &best_q);
    }
  }

  for (int r = 0; r < opts.restarts; ++r) {
    int rank = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
    Eigen::MatrixXd l(n - 1, rank);
    for (Eigen::Index i = 0; i < l.size(); ++i) l.data()[i] = gauss(rng);
    Eigen::MatrixXd s = l * l.transpose();
    ascend(v * s * v.transpose(), &best_ratio, &best_q);
  }

  DualSearchResult out;
  if (best_q.cwiseAbs().maxCoeff() > 0.0)
    out.best = make_certificate(best_q);
  else
    out.best = PSDCertificate{best_q, 0.0, 0};
  out.ratio = best_ratio;
  out.met_target = best_ratio >= target * (1.0 - opts.rel_tol);
  return out;
}

DistortionReport min_distortion(const SemiMetricSpace& X, double p,
                                const SolverOptions& opts) {
  if (p < 0.0) throw Error(ErrKind::BadExponent, "p must be >= 0");
  const int n = X.n();
  Eigen::MatrixXd w = power_transform(X, p).dist;

  DistortionReport report;
  if (p == 0.0 || is_equilateral(w)) {
    // Equilateral target: the simplex is an isometric embedding.
    report.gram = equilateral_gram(n, w(0, 1));
    report.embedding = gram_to_embedding(report.gram);
    report.c2 = 1.0;
    report.lo = 1.0;
    report.hi = 1.0;
    return report;
  }

  Eigen::MatrixXd v = meanzero_basis(n);
  const double max_w = w.maxCoeff();

  auto check = [&](double t, Eigen::MatrixXd start) {
    return box_cone_feasibility(w, t, v, std::move(start), opts.max_proj_iters,
                                opts.feas_tol * max_w * std::max(1.0, t));
  };

  Eigen::MatrixXd warm = w;
  warm.diagonal().setZero();

  FeasResult at_one = check(1.0, warm);
  double t_lo, t_hi;
  FeasResult feas_hi;
  if (at_one.feasible) {
    t_lo = 1.0;
    t_hi = 1.0;
    feas_hi = at_one;
  } else {
    warm = at_one.D;
    double t = 2.0;
    FeasResult r = check(t, warm);
    int doublings = 0;
    while (!r.feasible) {
      if (++doublings > 60)
        throw Error(ErrKind::SolverFailure, "no feasible distortion found");
      warm = r.D;
      t *= 2.0;
      r = check(t, warm);
    }
    t_lo = t / 2.0;
    t_hi = t;
    feas_hi = r;
    warm = r.D;

    const double stop = 0.25 * opts.rel_tol;
    int steps = 0;
    while (std::sqrt(t_hi) - std::sqrt(t_lo) > stop * std::sqrt(t_lo)) {
      if (++steps > 200)
        throw Error(ErrKind::SolverFailure, "bisection failed to close the bracket");
      double t_mid = 0.25 * (std::sqrt(t_lo) + std::sqrt(t_hi)) *
                     (std::sqrt(t_lo) + std::sqrt(t_hi));
      FeasResult r2 = check(t_mid, warm);
      warm = r2.D;
      if (r2.feasible) {
        t_hi = t_mid;
        feas_hi = r2;
      } else {
        t_lo = t_mid;
      }
    }
  }

  // Re-solve at the accepted t with a much tighter tolerance so the reported
  // gram sits well inside the box constraints; the bisection loop itself only
  // needs feasible/infeasible answers and can stay coarse.
  FeasResult polished =
      box_cone_feasibility(w, t_hi, v, feas_hi.D, 4 * opts.max_proj_iters,
                           0.01 * opts.feas_tol * max_w * std::max(1.0, t_hi));
  if (polished.gap <= feas_hi.gap) feas_hi = polished;

  report.lo = std::sqrt(t_lo);
  report.hi = std::sqrt(t_hi) * (1.0 + opts.feas_tol);
  report.gram = psd_project(gram_from_sq_dists(feas_hi.D));
  report.embedding = gram_to_embedding(report.gram);

  if (opts.want_certificate) {
    auto search = dual_certificate_search(X, p, t_hi, opts);
    if (search.ratio > 0.0) {
      report.certificate = search.best;
      report.certificate_ratio = search.ratio;
      // A verified ratio is a true lower bound on c2^2.
      double lo = std::sqrt(search.ratio);
      if (lo > report.lo && lo <= report.hi) report.lo = lo;
    }
  }
  report.c2 = 0.5 * (report.lo + report.hi);
  return report;
}

}  // namespace negtype
