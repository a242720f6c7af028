// qcong command-line front end: thin argv parsing over qcong::run.

#include "qcong/cli.hpp"
#include "qcong/kernels.hpp"
#include "qcong/version.hpp"

#include "CLI11.hpp"

#include <string>
#include <vector>

namespace {

void add_common(CLI::App* cmd, qcong::RunConfig& cfg) {
  cmd->add_option("--series", cfg.series, "catalog series name");
  cmd->add_option("--cache", cfg.cache_path, "input coefficient cache");
  cmd->add_option("--catalog", cfg.catalog_path, "catalog file (default: QCONG_CATALOG or data/catalog.qcat)");
  cmd->add_option("--trunc", cfg.trunc, "truncation order");
  cmd->add_option("--mod", cfg.modulus, "coefficient modulus (omit for exact integers)");
  cmd->add_option("--out", cfg.out_path, "output path (relative paths honor QCONG_CACHE_DIR)");
  cmd->add_option("--format", cfg.format, "text | structured")->check(CLI::IsMember({"text", "structured"}));
  cmd->add_option("--threads", cfg.threads, "worker cap (default: machine parallelism)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-series congruence toolkit"};
  app.set_version_flag("--version", std::string("qcong ") + qcong::toolkit_version);
  app.require_subcommand(1);

  std::string kernels = "auto";
  app.add_option("--kernels", kernels, "kernel selection: auto | scalar | avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  qcong::RunConfig cfg;

  auto* expand = app.add_subcommand("expand", "expand a catalog series into a coefficient cache");
  add_common(expand, cfg);

  auto* twist = app.add_subcommand("twist", "apply the hat filter (double quadratic twist)");
  add_common(twist, cfg);
  twist->add_option("--Q", cfg.Q, "odd twist prime")->required();

  auto* project = app.add_subcommand("project", "apply the cusp-form projection mod ell^j");
  add_common(project, cfg);
  project->add_option("--ell", cfg.ell, "prime ell")->required();
  project->add_option("--alpha", cfg.alpha, "projection exponent alpha");

  auto* hecke = app.add_subcommand("hecke", "apply T(p^2) or run the annihilation check");
  add_common(hecke, cfg);
  hecke->add_option("--p", cfg.p, "Hecke prime")->required();
  hecke->add_option("--lambda", cfg.lambda, "weight index lambda (weight lambda + 1/2)")->required();
  hecke->add_option("--chi", cfg.chi, "character value chi(p) in {-1,0,1}");
  hecke->add_option("--ell", cfg.ell, "prime ell")->required();
  hecke->add_option("--j", cfg.j, "power j of ell");
  hecke->add_option("--level", cfg.level, "ambient level 4N");
  hecke->add_flag("--check", cfg.check, "run annihilation check instead of writing T(p^2)");
  hecke->add_option("--bound", cfg.bound, "annihilation horizon");
  int64_t sturm_in = -1;
  hecke->add_option("--sturm", sturm_in, "Sturm bound to compare the horizon against");

  auto* bounds = app.add_subcommand("bounds", "effective-bound report for the pipeline space");
  add_common(bounds, cfg);
  bounds->add_option("--ell", cfg.ell, "prime ell")->required();
  bounds->add_option("--j", cfg.j, "power j of ell");
  bounds->add_option("--N", cfg.N, "the N of the ambient space level 2 N Q^3 ell^2")->required();
  bounds->add_option("--Q", cfg.Q, "twist prime");
  bounds->add_option("--beta", cfg.beta, "beta exponent");
  bounds->add_option("--v", cfg.v, "max mu-adic valuation parameter v (caller input)");
  bounds->add_option("--v-mode", cfg.v_mode, "optimistic (use --v, default 0) | pessimistic (v = j)")
      ->check(CLI::IsMember({"optimistic", "pessimistic"}));
  bounds->add_option("--r", cfg.r, "residue degree r");

  auto* verify = app.add_subcommand("verify", "verify c(A n + B) = 0 mod m up to a horizon");
  add_common(verify, cfg);
  verify->add_option("--A", cfg.A, "progression modulus")->required();
  verify->add_option("--B", cfg.B, "progression offset")->required();
  verify->add_option("--horizon", cfg.horizon, "largest n tested")->required();

  auto* scan = app.add_subcommand("scan", "scan all residues B for each A for congruences");
  add_common(scan, cfg);
  scan->add_option("--A-set", cfg.A_set, "progression moduli to scan")->required()->delimiter(',');
  scan->add_option("--horizon", cfg.horizon, "largest n tested")->required();

  auto* assemble = app.add_subcommand("assemble", "assemble progression data from (p, ell, m, Q)");
  add_common(assemble, cfg);
  assemble->add_option("--p", cfg.p, "annihilating prime")->required();
  assemble->add_option("--ell", cfg.ell, "prime ell")->required();
  assemble->add_option("--j", cfg.j, "power j of ell");
  assemble->add_option("--m", cfg.m_exp, "exponent m (the projection alpha)");
  assemble->add_option("--Q", cfg.Q, "twist prime")->required();

  auto* pipeline = app.add_subcommand("pipeline", "expand -> twist -> project -> hunt -> assemble -> verify");
  add_common(pipeline, cfg);
  pipeline->add_option("--ell", cfg.ell, "prime ell")->required();
  pipeline->add_option("--j", cfg.j, "power j of ell");
  pipeline->add_option("--Q", cfg.q_mode, "twist prime: auto | ell | explicit odd prime");
  pipeline->add_option("--chi", cfg.chi_rule, "chi rule: auto | 1 | -1 | kronecker:D");
  pipeline->add_option("--p-class", cfg.p_class, "candidate class: restrict | all")
      ->check(CLI::IsMember({"restrict", "all"}));
  pipeline->add_option("--p-max", cfg.p_max, "largest candidate prime");
  pipeline->add_option("--bound", cfg.bound, "annihilation horizon");
  pipeline->add_option("--horizon", cfg.horizon, "verification horizon (0 = largest feasible)");
  pipeline->add_option("--min-ord-div", cfg.min_ord_div, "min cusp order over ell^2 | c (input)");
  pipeline->add_option("--min-ord-nondiv", cfg.min_ord_nondiv, "min cusp order over ell^2 coprime c (input)");
  pipeline->add_option("--v", cfg.v, "valuation parameter v for the bound report");
  pipeline->add_option("--r", cfg.r, "residue degree r for the bound report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qcong::exit_bad_config;
  }

  if (kernels == "scalar") qcong::kernels::force_isa(qcong::kernels::Isa::scalar);
  if (kernels == "avx2") qcong::kernels::force_isa(qcong::kernels::Isa::avx2);
  if (sturm_in >= 0) cfg.sturm = sturm_in;

  for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
  return qcong::run(cfg);
}
