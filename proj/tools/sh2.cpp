// sh2: command-line front end. JSON report on stdout, summary on stderr.

#include <iostream>

#include <CLI11.hpp>

#include "sh2/cli.hpp"

namespace {

void add_lambda_options(CLI::App* cmd, sh2::cli::LambdaArgs& a) {
  cmd->add_option("--gamma", a.gamma, "initial angle gamma");
  cmd->add_option("--c", a.c, "initial c");
  cmd->add_option("--case", a.case_name, "stratum C1..C5 (instead of --gamma/--c)");
  cmd->add_option("--k", a.k, "modulus in (0,1) for C1/C2");
  cmd->add_option("--phi", a.phi, "phase phi (psi for C2)");
  cmd->add_option("--s1", a.s1, "sign s1");
  cmd->add_option("--s2", a.s2, "sign s2");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sh2: sub-Riemannian geodesics on SH(2)"};
  app.set_version_flag("--version", std::string(SH2_VERSION));
  app.require_subcommand(1);

  sh2::cli::LambdaArgs lambda;
  double t = 0.0;
  int n = 3;
  std::optional<double> tol;
  sh2::cli::FrontArgs front;
  std::string suite = "all";

  auto* exp = app.add_subcommand("exp", "endpoint of the geodesic at time t");
  add_lambda_options(exp, lambda);
  exp->add_option("--t", t, "time")->required();
  exp->add_option("--tol", lambda.tol, "classification tolerance");

  auto* maxwell = app.add_subcommand("maxwell", "first N Maxwell times with strata labels");
  add_lambda_options(maxwell, lambda);
  maxwell->add_option("--n", n, "number of times");
  maxwell->add_option("--tol", tol, "membership tolerance");

  auto* conj = app.add_subcommand("conjugate", "first N conjugate times with brackets");
  add_lambda_options(conj, lambda);
  conj->add_option("--n", n, "number of times");

  auto* fr = app.add_subcommand("front", "wavefront or sphere point cloud");
  fr->add_option("--radius", front.radius, "radius R")->required();
  fr->add_option("--grid", front.grid, "moduli x phases, e.g. 200x400");
  fr->add_option("--out", front.out, "output file")->required();
  fr->add_option("--format", front.format, "csv, ply or json");
  fr->add_flag("--sphere", front.sphere, "keep points with cut-time bound >= R");
  fr->add_flag("--diagnose", front.diagnose, "run the self-intersection diagnostic");
  fr->add_option("--threads", front.threads, "worker threads (0: all cores)");

  auto* ver = app.add_subcommand("verify", "run a self-check suite");
  ver->add_option("--suite", suite, "elliptic, ode, jacobian, strata, interleaving or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sh2::cli::kExitInput;
  }

  sh2::cli::Outcome out;
  if (*exp) out = sh2::cli::cmd_exp(lambda, t);
  else if (*maxwell) out = sh2::cli::cmd_maxwell(lambda, n, tol);
  else if (*conj) out = sh2::cli::cmd_conjugate(lambda, n);
  else if (*fr) out = sh2::cli::cmd_front(front);
  else out = sh2::cli::cmd_verify(suite);

  std::cout << out.report.to_json().dump(2) << '\n';
  std::cerr << out.summary << '\n';
  return out.exit_code;
}
