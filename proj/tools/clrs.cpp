// Command-line driver: build model bundles, solve them, and check solutions.
//
// Subcommands:
//   build kissing|packing  — generate a model, lower it, write a problem bundle
//   solve                  — solve a bundle, print a key = value report, write a solution
//   check                  — independently verify a solution against its bundle
//
// Every number in reports and files is a decimal string that parses back to
// the exact same bits, so reports are reproducible byte-for-byte.
//
// Exit codes: 0 success/Optimal, 1 failed check, 2 MaxIterations,
// 3 NumericalFailure, 64 usage error.

#include <chrono>
#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clrs/bundle.hpp"
#include "clrs/models.hpp"
#include "clrs/solver.hpp"
#include "clrs/verify.hpp"

namespace {

using clrs::BigFloat;

struct SolverFlags {
  long precision = 256;
  std::size_t threads = 1;
  std::size_t max_iter = 500;
  std::string gap_tol = "1e-30";
  std::string primal_tol = "1e-30";
  std::string dual_tol = "1e-30";
  std::string beta_infeasible = "0.3";
  std::string beta_feasible = "0.1";
  std::string gamma = "0.9";
  std::string omega;  // empty = solver default 2^20
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--precision", f.precision, "Working precision in bits")
      ->check(CLI::Range(64L, 65536L))
      ->capture_default_str();
  cmd->add_option("--threads", f.threads, "Worker threads for the solve")
      ->check(CLI::Range(std::size_t{1}, std::size_t{256}))
      ->capture_default_str();
  cmd->add_option("--max-iter", f.max_iter, "Iteration limit")->capture_default_str();
  cmd->add_option("--gap-tol", f.gap_tol, "Relative duality-gap tolerance")
      ->capture_default_str();
  cmd->add_option("--primal-tol", f.primal_tol, "Primal residual tolerance")
      ->capture_default_str();
  cmd->add_option("--dual-tol", f.dual_tol, "Dual residual tolerance")->capture_default_str();
  cmd->add_option("--beta-infeasible", f.beta_infeasible, "Centering strength while infeasible")
      ->capture_default_str();
  cmd->add_option("--beta-feasible", f.beta_feasible, "Centering strength once feasible")
      ->capture_default_str();
  cmd->add_option("--gamma", f.gamma, "Step-length safety factor")->capture_default_str();
  cmd->add_option("--omega", f.omega, "Initial point scale (X = Y = omega*I)");
}

clrs::SolverOptions to_options(const SolverFlags& f) {
  clrs::SolverOptions opt;
  opt.precision = f.precision;
  opt.threads = f.threads;
  opt.max_iterations = f.max_iter;
  opt.gap_tol = BigFloat(f.gap_tol);
  opt.primal_tol = BigFloat(f.primal_tol);
  opt.dual_tol = BigFloat(f.dual_tol);
  opt.beta_infeasible = BigFloat(f.beta_infeasible);
  opt.beta_feasible = BigFloat(f.beta_feasible);
  opt.gamma = BigFloat(f.gamma);
  if (!f.omega.empty()) opt.omega = BigFloat(f.omega);
  return opt;
}

void print_kv(const std::string& key, const std::string& value) {
  std::cout << key << " = " << value << "\n";
}

void print_kv(const std::string& key, const BigFloat& value) {
  print_kv(key, clrs::to_string(value));
}

// Cluster/block/constraint statistics for a bundle.
void print_structure(const clrs::ClusteredSDP& sdp) {
  print_kv("clusters", std::to_string(sdp.clusters.size()));
  print_kv("free_variables", std::to_string(sdp.num_free()));
  print_kv("total_psd_dim", std::to_string(sdp.total_psd_dim()));
  for (std::size_t j = 0; j < sdp.clusters.size(); ++j) {
    const clrs::Cluster& cl = sdp.clusters[j];
    const std::string head = "cluster[" + std::to_string(j) + "]";
    print_kv(head + ".blocks", std::to_string(cl.shapes.size()));
    print_kv(head + ".rows", std::to_string(cl.num_constraints()));
    std::ostringstream sizes;
    for (std::size_t l = 0; l < cl.shapes.size(); ++l) {
      if (l) sizes << " ";
      sizes << cl.shapes[l].base << "x" << cl.shapes[l].r_count;
    }
    print_kv(head + ".block_sizes", sizes.str());
  }
}

// ---- build ---------------------------------------------------------------------

struct BuildKissingArgs {
  long n = 3;
  long d = 3;
  std::string cos_theta = "0.5";
  std::string mode = "B";
  long precision = 256;
  std::string output = "bundle.json";
};

struct BuildPackingArgs {
  long n = 2;
  std::string radii = "1";
  long degree = 31;
  std::string scale = "1";
  std::string mode = "B";
  long precision = 256;
  std::string output = "bundle.json";
};

int run_build_kissing(const BuildKissingArgs& a) {
  clrs::set_working_precision(a.precision);
  clrs::KissingModelSpec spec;
  spec.n = a.n;
  spec.d = a.d;
  spec.cos_theta = BigFloat(a.cos_theta);
  spec.mode = a.mode == "A" ? clrs::LoweringMode::A : clrs::LoweringMode::B;
  clrs::KissingModel model = clrs::kissing_model(spec);
  clrs::LoweredProgram lowered = clrs::lower(model.program, model.inputs, spec.mode);

  std::string params = "n=" + std::to_string(a.n) + " d=" + std::to_string(a.d) +
                       " cos_theta=" + clrs::to_string(spec.cos_theta) + " mode=" + a.mode;
  clrs::ProblemBundle bundle =
      clrs::make_bundle(std::move(lowered), model.inputs, "kissing", params, a.mode);
  clrs::write_bundle(a.output, bundle);

  print_kv("generator", "kissing");
  print_kv("parameters", params);
  print_kv("precision", std::to_string(a.precision));
  print_structure(bundle.lowered.sdp);
  print_kv("bundle", a.output);
  print_kv("bundle_id", clrs::bundle_id(bundle));
  return 0;
}

int run_build_packing(const BuildPackingArgs& a) {
  clrs::set_working_precision(a.precision);
  clrs::PackingModelSpec spec;
  spec.n = a.n;
  spec.degree = a.degree;
  spec.scale = BigFloat(a.scale);
  std::stringstream ss(a.radii);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) spec.radii.push_back(BigFloat(tok));
  }
  if (spec.radii.empty()) throw CLI::ValidationError("--radii", "needs at least one radius");
  clrs::LoweringMode mode = a.mode == "A" ? clrs::LoweringMode::A : clrs::LoweringMode::B;
  clrs::PackingModel model = clrs::packing_model(spec);
  clrs::LoweredProgram lowered = clrs::lower(model.program, model.inputs, mode);

  std::string params = "n=" + std::to_string(a.n) + " radii=" + a.radii +
                       " degree=" + std::to_string(a.degree) +
                       " scale=" + clrs::to_string(spec.scale) + " mode=" + a.mode;
  clrs::ProblemBundle bundle =
      clrs::make_bundle(std::move(lowered), model.inputs, "packing", params, a.mode);
  clrs::write_bundle(a.output, bundle);

  print_kv("generator", "packing");
  print_kv("parameters", params);
  print_kv("precision", std::to_string(a.precision));
  print_structure(bundle.lowered.sdp);
  print_kv("bundle", a.output);
  print_kv("bundle_id", clrs::bundle_id(bundle));
  return 0;
}

// ---- model regeneration from recorded provenance --------------------------------

// Rebuilds the generator output recorded in a bundle manifest, giving check
// access to the symbolic polynomials (they are not serialized).
struct Regenerated {
  clrs::PolyMatrixProgram program;
  std::vector<clrs::LoweringInput> inputs;
  bool available = false;
};

std::string param_value(const std::string& params, const std::string& key) {
  const std::string needle = key + "=";
  auto pos = params.find(needle);
  if (pos == std::string::npos) return {};
  pos += needle.size();
  auto end = params.find(' ', pos);
  return params.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
}

Regenerated regenerate(const clrs::BundleManifest& manifest) {
  Regenerated out;
  if (manifest.generator == "kissing") {
    clrs::KissingModelSpec spec;
    spec.n = std::stol(param_value(manifest.parameters, "n"));
    spec.d = std::stol(param_value(manifest.parameters, "d"));
    spec.cos_theta = BigFloat(param_value(manifest.parameters, "cos_theta"));
    clrs::KissingModel model = clrs::kissing_model(spec);
    out.program = std::move(model.program);
    out.inputs = std::move(model.inputs);
    out.available = true;
  } else if (manifest.generator == "packing") {
    clrs::PackingModelSpec spec;
    spec.n = std::stol(param_value(manifest.parameters, "n"));
    spec.degree = std::stol(param_value(manifest.parameters, "degree"));
    spec.scale = BigFloat(param_value(manifest.parameters, "scale"));
    std::stringstream ss(param_value(manifest.parameters, "radii"));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) spec.radii.push_back(BigFloat(tok));
    }
    clrs::PackingModel model = clrs::packing_model(spec);
    out.program = std::move(model.program);
    out.inputs = std::move(model.inputs);
    out.available = true;
  }
  return out;
}

// ---- solve ---------------------------------------------------------------------

struct SolveArgs {
  std::string bundle_path;
  std::string output = "solution.json";
  SolverFlags flags;
};

int run_solve(const SolveArgs& a) {
  clrs::set_working_precision(a.flags.precision);
  const std::string text = clrs::read_text_file(a.bundle_path);
  clrs::ProblemBundle bundle = clrs::bundle_from_string(text);
  clrs::SolverOptions opt = to_options(a.flags);

  const auto t0 = std::chrono::steady_clock::now();
  clrs::SolverResult res = clrs::solve(bundle.lowered.sdp, opt);
  const auto t1 = std::chrono::steady_clock::now();
  const double wall = std::chrono::duration<double>(t1 - t0).count();

  clrs::SolutionFile sol;
  sol.bundle_id = clrs::bundle_id(text);
  sol.status = clrs::to_string(res.status);
  sol.iterations = res.iterations;
  sol.primal_objective = res.primal_objective;
  sol.dual_objective = res.dual_objective;
  sol.duality_gap = res.duality_gap;
  sol.primal_error = res.primal_error;
  sol.dual_error = res.dual_error;
  sol.mu = res.state.mu;
  sol.x = res.state.x;
  sol.X = res.state.X;
  sol.y = res.state.y;
  sol.Y = res.state.Y;
  clrs::write_solution(a.output, sol);

  print_kv("bundle", a.bundle_path);
  print_kv("bundle_id", sol.bundle_id);
  print_kv("precision", std::to_string(a.flags.precision));
  print_kv("threads", std::to_string(a.flags.threads));
  print_kv("max_iterations", std::to_string(a.flags.max_iter));
  print_kv("gap_tol", opt.gap_tol);
  print_kv("primal_tol", opt.primal_tol);
  print_kv("dual_tol", opt.dual_tol);
  print_kv("beta_infeasible", opt.beta_infeasible);
  print_kv("beta_feasible", opt.beta_feasible);
  print_kv("gamma", opt.gamma);
  print_kv("omega", opt.omega);
  print_kv("status", sol.status);
  print_kv("message", res.message);
  print_kv("iterations", std::to_string(res.iterations));
  print_kv("primal_objective", res.primal_objective);
  print_kv("dual_objective", res.dual_objective);
  print_kv("duality_gap", res.duality_gap);
  print_kv("primal_error", res.primal_error);
  print_kv("dual_error", res.dual_error);
  print_kv("mu", res.state.mu);
  print_kv("bound", clrs::reported_bound(bundle.lowered, res.dual_objective));
  {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", wall);
    print_kv("wall_time_seconds", buf);
  }
  print_kv("solution", a.output);

  switch (res.status) {
    case clrs::SolverStatus::Optimal:
    case clrs::SolverStatus::PrimalDualOptimal:
      return 0;
    case clrs::SolverStatus::MaxIterations:
      return 2;
    case clrs::SolverStatus::NumericalFailure:
      return 3;
  }
  return 3;
}

// ---- check ---------------------------------------------------------------------

struct CheckArgs {
  std::string bundle_path;
  std::string solution_path;
  long precision = 256;
  std::size_t points = 50;
  std::string tol = "1e-20";
};

int run_check(const CheckArgs& a) {
  clrs::set_working_precision(a.precision);
  const std::string text = clrs::read_text_file(a.bundle_path);
  clrs::ProblemBundle bundle = clrs::bundle_from_string(text);
  clrs::SolutionFile sol = clrs::read_solution(a.solution_path);

  print_kv("bundle", a.bundle_path);
  print_kv("solution", a.solution_path);
  const std::string id = clrs::bundle_id(text);
  print_kv("bundle_id", id);
  print_kv("solution_bundle_id", sol.bundle_id);
  if (sol.bundle_id != id) {
    print_kv("verdict", "rejected (solution was produced for a different bundle)");
    return 1;
  }
  print_kv("generator", bundle.manifest.generator);
  print_kv("parameters", bundle.manifest.parameters);

  clrs::CheckReport rep =
      clrs::recompute_measures(bundle.lowered.sdp, sol.x, sol.X, sol.y, sol.Y);

  Regenerated regen = regenerate(bundle.manifest);
  if (regen.available) {
    rep.identity_violation = clrs::certified_identity_violation(
        regen.program, regen.inputs, bundle.lowered, sol.y, sol.Y, a.points,
        &rep.identity_points);
  }

  const BigFloat tol(a.tol);
  print_kv("primal_objective", rep.primal_objective);
  print_kv("dual_objective", rep.dual_objective);
  print_kv("duality_gap", rep.duality_gap);
  print_kv("primal_error", rep.primal_error);
  print_kv("dual_error", rep.dual_error);
  print_kv("identity_points", std::to_string(rep.identity_points));
  print_kv("identity_violation", rep.identity_violation);
  print_kv("tolerance", tol);

  const bool ok = rep.primal_error <= tol && rep.dual_error <= tol &&
                  rep.identity_violation <= tol;
  print_kv("verdict", ok ? "pass" : "FAIL");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clustered low-rank SDP toolchain: build, solve, check"};
  app.require_subcommand(1);

  BuildKissingArgs kiss;
  BuildPackingArgs pack;
  SolveArgs solve_args;
  CheckArgs check_args;

  CLI::App* build = app.add_subcommand("build", "Generate a model and write a problem bundle");
  build->require_subcommand(1);

  CLI::App* bk = build->add_subcommand("kissing", "Three-point kissing-number bound");
  bk->add_option("--n", kiss.n, "Sphere dimension")->check(CLI::Range(3L, 64L))
      ->capture_default_str();
  bk->add_option("--d", kiss.d, "Half-degree of the kernel blocks")->check(CLI::Range(1L, 64L))
      ->capture_default_str();
  bk->add_option("--cos-theta", kiss.cos_theta, "Cap cosine")->capture_default_str();
  bk->add_option("--mode", kiss.mode, "Lowering mode")->check(CLI::IsMember({"A", "B"}))
      ->capture_default_str();
  bk->add_option("--precision", kiss.precision, "Working precision in bits")
      ->check(CLI::Range(64L, 65536L))->capture_default_str();
  bk->add_option("-o,--output", kiss.output, "Bundle path")->capture_default_str();

  CLI::App* bp = build->add_subcommand("packing", "Translational sphere-packing density bound");
  bp->add_option("--n", pack.n, "Ambient dimension")->check(CLI::Range(1L, 64L))
      ->capture_default_str();
  bp->add_option("--radii", pack.radii, "Comma-separated sphere radii")->capture_default_str();
  bp->add_option("--degree", pack.degree, "Top polynomial term index")->check(CLI::Range(1L, 256L))
      ->capture_default_str();
  bp->add_option("--scale", pack.scale, "Radius rescaling factor")->capture_default_str();
  bp->add_option("--mode", pack.mode, "Lowering mode")->check(CLI::IsMember({"A", "B"}))
      ->capture_default_str();
  bp->add_option("--precision", pack.precision, "Working precision in bits")
      ->check(CLI::Range(64L, 65536L))->capture_default_str();
  bp->add_option("-o,--output", pack.output, "Bundle path")->capture_default_str();

  CLI::App* sv = app.add_subcommand("solve", "Solve a bundle and write the solution");
  sv->add_option("bundle", solve_args.bundle_path, "Problem bundle")->required();
  sv->add_option("-o,--output", solve_args.output, "Solution path")->capture_default_str();
  add_solver_flags(sv, solve_args.flags);

  CLI::App* ck = app.add_subcommand("check", "Independently verify a solution");
  ck->add_option("bundle", check_args.bundle_path, "Problem bundle")->required();
  ck->add_option("solution", check_args.solution_path, "Solution file")->required();
  ck->add_option("--precision", check_args.precision, "Working precision in bits")
      ->check(CLI::Range(64L, 65536L))->capture_default_str();
  ck->add_option("--points", check_args.points, "Fresh evaluation points per constraint")
      ->capture_default_str();
  ck->add_option("--tol", check_args.tol, "Pass/fail threshold for residuals and violations")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11 prints its own message; fold all parse problems into the usage code.
    int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  }

  try {
    if (bk->parsed()) return run_build_kissing(kiss);
    if (bp->parsed()) return run_build_packing(pack);
    if (sv->parsed()) return run_solve(solve_args);
    if (ck->parsed()) return run_check(check_args);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const clrs::BadBundle& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 64;
}
