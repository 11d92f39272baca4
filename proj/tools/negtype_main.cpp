#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "negtype/classical.hpp"
#include "negtype/closed_forms.hpp"
#include "negtype/distortion.hpp"
#include "negtype/gap.hpp"
#include "negtype/io.hpp"
#include "negtype/space.hpp"

namespace {

using namespace negtype;

struct CommonArgs {
  std::string input;
  std::string family;
  int m = 0;
  int n = 0;
  double p = 2.0;
  double C = 1.0;
  double tol = 1e-4;
  int restarts = 32;
  std::uint64_t seed = 20240817;
  std::string out;
  std::string format = "json";
};

void add_space_flags(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--input", args->input, "distance matrix (CSV/JSON) or graph file");
  cmd->add_option("--family", args->family, "builtin family: complete, bipartite, hamming")
      ->check(CLI::IsMember({"complete", "bipartite", "hamming"}));
  cmd->add_option("--m", args->m, "first part size (bipartite)");
  cmd->add_option("--n", args->n, "size parameter");
}

void add_common_flags(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--tol", args->tol, "relative tolerance on c2");
  cmd->add_option("--restarts", args->restarts, "restart budget for searches");
  cmd->add_option("--seed", args->seed, "seed for randomized search");
  cmd->add_option("--out", args->out, "output path (default stdout)");
  cmd->add_option("--format", args->format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
}

SemiMetricSpace resolve_space(const CommonArgs& args) {
  if (!args.input.empty()) return load_space(args.input);
  if (args.family == "complete") return standard_space(Family::complete, args.n);
  if (args.family == "bipartite")
    return standard_space(Family::bipartite, args.m, args.n);
  if (args.family == "hamming") return standard_space(Family::hamming, args.n);
  throw Error(ErrKind::BadParams, "need --input or --family");
}

SolverOptions solver_options(const CommonArgs& args) {
  SolverOptions opts;
  opts.rel_tol = args.tol;
  opts.restarts = args.restarts;
  opts.seed = args.seed;
  return opts;
}

void emit(const CommonArgs& args, const std::string& text) {
  if (args.out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw Error(ErrKind::FileNotFound, "cannot write " + args.out);
    out << text << "\n";
  }
}

void write_embedding(JsonWriter& w, const Embedding& e) {
  w.begin_object();
  w.key("dim");
  w.value(e.dim);
  w.key("points");
  w.matrix(e.points);
  w.end_object();
}

void write_certificate(JsonWriter& w, const PSDCertificate& cert,
                       double ratio) {
  w.begin_object();
  w.key("Q");
  w.matrix(cert.Q);
  w.key("ratio");
  w.value(ratio);
  w.key("rank");
  w.value(cert.rank);
  w.end_object();
}

std::string distortion_json(const DistortionReport& rep) {
  JsonWriter w;
  w.begin_object();
  w.key("c2");
  w.value(rep.c2);
  w.key("bracket");
  w.begin_array();
  w.value(rep.lo);
  w.value(rep.hi);
  w.end_array();
  w.key("gram");
  w.matrix(rep.gram);
  w.key("embedding");
  write_embedding(w, rep.embedding);
  if (rep.certificate) {
    w.key("certificate");
    write_certificate(w, *rep.certificate, rep.certificate_ratio);
  }
  w.end_object();
  return w.take();
}

int run_distortion(const CommonArgs& args) {
  auto X = resolve_space(args);
  auto rep = min_distortion(X, args.p, solver_options(args));
  if (args.format == "table") {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "c2 = %.12g   bracket [%.12g, %.12g]   dim %d", rep.c2,
                  rep.lo, rep.hi, rep.embedding.dim);
    emit(args, buf);
  } else {
    emit(args, distortion_json(rep));
  }
  return 0;
}

std::string verdict_json(double p, double C, const DistortedVerdict& v) {
  JsonWriter w;
  w.begin_object();
  w.key("p");
  w.value(p);
  w.key("C");
  w.value(C);
  w.key("status");
  w.value(std::string(status_name(v.status)));
  w.key("c2");
  w.value(v.c2_used);
  w.key("supremal_p");
  if (v.supremal_at_cap)
    w.value(std::string("at-least-cap"));
  else
    w.value(v.supremal_used);
  w.key("rationale");
  w.value(std::string(rationale_name(v.rationale)));
  w.key("ambiguous");
  w.value(v.ambiguous);
  w.end_object();
  return w.take();
}

int run_check(const CommonArgs& args) {
  auto X = resolve_space(args);
  auto v = distorted_p_negative_type(X, args.p, args.C, solver_options(args));
  if (args.format == "table") {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "p=%.12g C=%.12g -> %s (%s)%s", args.p,
                  args.C, status_name(v.status), rationale_name(v.rationale),
                  v.ambiguous ? " [ambiguous]" : "");
    emit(args, buf);
  } else {
    emit(args, verdict_json(args.p, args.C, v));
  }
  return v.status == Status::fails ? 1 : 0;
}

int run_supremal(const CommonArgs& args) {
  auto X = resolve_space(args);
  auto sup = supremal_negative_type(X);
  JsonWriter w;
  w.begin_object();
  w.key("value");
  if (sup.at_least_cap)
    w.value(std::string("at-least-cap"));
  else
    w.value(sup.value);
  w.key("bracket");
  w.begin_array();
  w.value(sup.bracket_lo);
  w.value(sup.bracket_hi);
  w.end_array();
  w.key("cap");
  w.value(sup.cap);
  w.end_object();
  emit(args, w.take());
  return 0;
}

int run_gap(const CommonArgs& args) {
  auto X = resolve_space(args);
  auto g = gap_estimate(X, args.p, args.C, args.restarts, solver_options(args));
  JsonWriter w;
  w.begin_object();
  w.key("p");
  w.value(args.p);
  w.key("C");
  w.value(args.C);
  w.key("value");
  w.value(g.value);
  w.key("restarts_used");
  w.value(g.restarts_used);
  w.key("sign_confident");
  w.value(g.sign_confident);
  w.key("Q");
  w.matrix(g.argmin.Q);
  w.end_object();
  emit(args, w.take());
  return 0;
}

int run_certify(const CommonArgs& args, const std::string& q_path) {
  auto X = resolve_space(args);
  Eigen::MatrixXd q = load_matrix(q_path);
  std::string why;
  bool ok = in_cone(q, &why);
  JsonWriter w;
  w.begin_object();
  w.key("in_cone");
  w.value(ok);
  if (!ok) {
    w.key("reason");
    w.value(why);
    w.end_object();
    emit(args, w.take());
    return 1;
  }
  auto cert = make_certificate(q);
  w.key("rank");
  w.value(cert.rank);
  w.key("ratio");
  w.value(certificate_ratio(X, args.p, cert));
  w.key("slack");
  w.value(distorted_inequality_slack(X, args.p, args.C, cert));
  w.end_object();
  emit(args, w.take());
  return 0;
}

int run_embed(const CommonArgs& args) {
  auto X = resolve_space(args);
  auto rep = min_distortion(X, args.p, solver_options(args));
  auto stats = embedding_stats(X, args.p, rep.embedding);
  JsonWriter w;
  w.begin_object();
  w.key("dim");
  w.value(rep.embedding.dim);
  w.key("points");
  w.matrix(rep.embedding.points);
  w.key("stats");
  w.begin_object();
  w.key("expansion");
  w.value(stats.expansion);
  w.key("contraction");
  w.value(stats.contraction);
  w.key("distortion");
  w.value(stats.distortion);
  w.end_object();
  w.end_object();
  emit(args, w.take());
  return 0;
}

int run_reference(const CommonArgs& args) {
  JsonWriter w;
  w.begin_object();
  w.key("family");
  w.value(args.family);
  if (args.family == "bipartite") {
    auto ref = kmn_reference(args.m, args.n);
    auto X = standard_space(Family::bipartite, args.m, args.n);
    w.key("m");
    w.value(args.m);
    w.key("n");
    w.value(args.n);
    w.key("supremal");
    w.value(ref.supremal);
    w.key("p");
    w.value(args.p);
    w.key("c2");
    w.value(ref.c2_at(args.p));
    w.key("embedding");
    write_embedding(w, ref.embedding_at(args.p));
    w.key("certificate");
    write_certificate(w, ref.certificate,
                      certificate_ratio(X, args.p, ref.certificate));
  } else if (args.family == "hamming") {
    auto ref = hamming_reference(args.n);
    auto X = standard_space(Family::hamming, args.n);
    w.key("n");
    w.value(args.n);
    w.key("supremal");
    w.value(1.0);
    w.key("p");
    w.value(args.p);
    w.key("c2");
    w.value(ref.c2_at(args.p));
    w.key("embedding");
    write_embedding(w, ref.embedding);
    w.key("certificate");
    write_certificate(w, ref.certificate,
                      certificate_ratio(X, args.p, ref.certificate));
  } else if (args.family == "complete") {
    w.key("n");
    w.value(args.n);
    w.key("c2");
    w.value(1.0);
    w.key("embedding");
    write_embedding(w, simplex_embedding(args.n));
  } else {
    throw Error(ErrKind::BadParams, "reference needs --family");
  }
  w.end_object();
  emit(args, w.take());
  return 0;
}

struct SweepArgs {
  double p_min = 0.5, p_max = 3.0;
  int p_steps = 6;
  double c_min = 1.0, c_max = 2.0;
  int c_steps = 5;
};

int run_sweep(const CommonArgs& args, const SweepArgs& sweep) {
  auto X = resolve_space(args);
  SolverOptions opts = solver_options(args);
  SupremalType sup = supremal_negative_type(X);

  std::string table = "p\tC\tc2\tstatus\n";
  JsonWriter w;
  w.begin_array();
  for (int i = 0; i < sweep.p_steps; ++i) {
    double p = sweep.p_steps == 1
                   ? sweep.p_min
                   : sweep.p_min + i * (sweep.p_max - sweep.p_min) /
                                       (sweep.p_steps - 1);
    bool below_sup = sup.at_least_cap || p < sup.bracket_lo;
    DistortionReport rep;
    if (!below_sup) rep = min_distortion(X, p, opts);
    for (int j = 0; j < sweep.c_steps; ++j) {
      double C = sweep.c_steps == 1
                     ? sweep.c_min
                     : sweep.c_min + j * (sweep.c_max - sweep.c_min) /
                                         (sweep.c_steps - 1);
      Status status;
      if (below_sup)
        status = Status::strict;
      else if (C > rep.hi)
        status = Status::strict;
      else if (C < rep.lo * (1.0 - 1e-9))
        status = Status::fails;
      else
        status = Status::nonstrict;
      double c2 = below_sup ? 1.0 : rep.c2;
      w.begin_object();
      w.key("p");
      w.value(p);
      w.key("C");
      w.value(C);
      w.key("c2");
      w.value(c2);
      w.key("status");
      w.value(std::string(status_name(status)));
      w.end_object();
      char buf[128];
      std::snprintf(buf, sizeof(buf), "%.12g\t%.12g\t%.12g\t%s\n", p, C, c2,
                    status_name(status));
      table += buf;
    }
  }
  w.end_array();
  if (args.format == "table") {
    table.pop_back();
    emit(args, table);
  } else {
    emit(args, w.take());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(strict) p-negative type with distortion for finite semi-metric spaces"};
  app.require_subcommand(1);

  CommonArgs args;
  SweepArgs sweep;
  std::string q_path;

  auto* distortion = app.add_subcommand("distortion", "minimal Euclidean distortion of (X, d^{p/2})");
  auto* check = app.add_subcommand("check", "decide (strict) p-negative type with distortion C");
  auto* supremal = app.add_subcommand("supremal", "supremal negative-type exponent");
  auto* gap = app.add_subcommand("gap", "distorted type gap estimate");
  auto* certify = app.add_subcommand("certify", "verify a user-supplied certificate matrix");
  auto* embed = app.add_subcommand("embed", "emit embedding coordinates");
  auto* reference = app.add_subcommand("reference", "closed forms for K_{m,n} and H_n");
  auto* sweep_cmd = app.add_subcommand("sweep", "verdict grid over p and C");

  for (auto* cmd : {distortion, check, supremal, gap, certify, embed, sweep_cmd}) {
    add_space_flags(cmd, &args);
    add_common_flags(cmd, &args);
  }
  add_common_flags(reference, &args);
  reference->add_option("--family", args.family, "bipartite, hamming or complete")
      ->check(CLI::IsMember({"complete", "bipartite", "hamming"}));
  reference->add_option("--m", args.m, "first part size (bipartite)");
  reference->add_option("--n", args.n, "size parameter");
  reference->add_option("--p", args.p, "metric power exponent");

  for (auto* cmd : {distortion, check, gap, certify, embed, sweep_cmd})
    cmd->add_option("--p", args.p, "metric power exponent");
  for (auto* cmd : {check, gap, certify})
    cmd->add_option("--C", args.C, "distortion level (>= 1)");
  certify->add_option("--Q", q_path, "certificate matrix file (CSV/JSON)")->required();

  sweep_cmd->add_option("--p-min", sweep.p_min, "grid start for p");
  sweep_cmd->add_option("--p-max", sweep.p_max, "grid end for p");
  sweep_cmd->add_option("--p-steps", sweep.p_steps, "grid points in p");
  sweep_cmd->add_option("--C-min", sweep.c_min, "grid start for C");
  sweep_cmd->add_option("--C-max", sweep.c_max, "grid end for C");
  sweep_cmd->add_option("--C-steps", sweep.c_steps, "grid points in C");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (distortion->parsed()) return run_distortion(args);
    if (check->parsed()) return run_check(args);
    if (supremal->parsed()) return run_supremal(args);
    if (gap->parsed()) return run_gap(args);
    if (certify->parsed()) return run_certify(args, q_path);
    if (embed->parsed()) return run_embed(args);
    if (reference->parsed()) return run_reference(args);
    if (sweep_cmd->parsed()) return run_sweep(args, sweep);
  } catch (const negtype::Error& e) {
    std::cerr << "error [" << err_kind_name(e.kind()) << "]: " << e.what()
              << "\n";
    return e.kind() == negtype::ErrKind::SolverFailure ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
