#include "qcong/cli.hpp"

#include "qcong/bounds.hpp"
#include "qcong/cache.hpp"
#include "qcong/error.hpp"
#include "qcong/hecke.hpp"
#include "qcong/ntheory.hpp"
#include "qcong/twist.hpp"
#include "qcong/version.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

namespace qcong {

namespace {

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::window_exceeded:
    case ErrorKind::empty_window:
    case ErrorKind::search_exhausted:
      return exit_infeasible;
    default:
      return exit_bad_config;
  }
}

std::string resolve_out(const std::string& path) {
  if (path.empty()) return path;
  namespace fs = std::filesystem;
  if (fs::path(path).is_absolute()) return path;
  if (const char* dir = std::getenv("QCONG_CACHE_DIR")) return (fs::path(dir) / path).string();
  return path;
}

std::string timestamp() {
  auto now = std::chrono::system_clock::now();
  auto t = std::chrono::system_clock::to_time_t(now);
  char buf[64];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// Emit a finished document: structured form to stdout and (atomically) to the
// out path; text form prints a short summary instead.
void emit(const RunConfig& cfg, Document doc, const std::string& summary) {
  doc.add("generated_at", timestamp());
  std::string body = doc.serialize();
  if (!cfg.out_path.empty()) write_text_atomic(resolve_out(cfg.out_path), body);
  if (cfg.format == "structured") std::cout << body;
  else std::cout << summary << "\n";
}

struct InputSeries {
  TruncatedSeries series;
  std::string id;
  std::string checksum;  // fnv1a of the cache or catalog file backing it
};

Catalog open_catalog(const RunConfig& cfg) {
  std::string path = cfg.catalog_path.empty() ? default_catalog_path() : cfg.catalog_path;
  return load_catalog(path);
}

std::string catalog_checksum(const RunConfig& cfg) {
  std::string path = cfg.catalog_path.empty() ? default_catalog_path() : cfg.catalog_path;
  return "fnv1a:" + std::to_string(fnv1a_file(path));
}

InputSeries load_input(const RunConfig& cfg, int64_t needed_trunc) {
  if (!cfg.cache_path.empty()) {
    CacheReader reader(cfg.cache_path);
    InputSeries in{reader.load_all(), "cache:" + cfg.cache_path,
                   "fnv1a:" + std::to_string(reader.checksum())};
    return in;
  }
  if (cfg.series.empty())
    raise(ErrorKind::bad_argument, cfg.command + ": needs --series or --cache");
  int64_t T = cfg.trunc > 0 ? cfg.trunc : needed_trunc;
  if (T < 1) raise(ErrorKind::bad_argument, cfg.command + ": needs --trunc");
  Catalog cat = open_catalog(cfg);
  const MockThetaSpec& spec = cat.require(cfg.series);
  std::cerr << "expanding " << cfg.series << " to " << T << " terms"
            << (cfg.modulus ? " mod " + std::to_string(cfg.modulus) : std::string()) << "\n";
  InputSeries in{expand_series(spec, T, cfg.modulus), cfg.series, catalog_checksum(cfg)};
  return in;
}

int cmd_expand(const RunConfig& cfg) {
  if (cfg.out_path.empty()) raise(ErrorKind::bad_argument, "expand: needs --out");
  InputSeries in = load_input(cfg, 0);
  write_cache(resolve_out(cfg.out_path), in.series);
  std::cerr << "wrote " << resolve_out(cfg.out_path) << "\n";
  return exit_ok;
}

int cmd_twist(const RunConfig& cfg) {
  if (cfg.Q == 0) raise(ErrorKind::bad_argument, "twist: needs --Q");
  if (cfg.out_path.empty()) raise(ErrorKind::bad_argument, "twist: needs --out");
  InputSeries in = load_input(cfg, 0);
  TruncatedSeries out = hat_filter(in.series, cfg.Q);
  write_cache(resolve_out(cfg.out_path), out);
  std::cerr << "wrote " << resolve_out(cfg.out_path) << "\n";
  return exit_ok;
}

int cmd_project(const RunConfig& cfg) {
  if (cfg.ell == 0) raise(ErrorKind::bad_argument, "project: needs --ell");
  if (cfg.out_path.empty()) raise(ErrorKind::bad_argument, "project: needs --out");
  InputSeries in = load_input(cfg, 0);
  TruncatedSeries out = treneer_projection(in.series, cfg.ell, cfg.alpha);
  write_cache(resolve_out(cfg.out_path), out);
  std::cerr << "wrote " << resolve_out(cfg.out_path) << "\n";
  return exit_ok;
}

int cmd_hecke(const RunConfig& cfg) {
  if (cfg.p == 0 || cfg.ell == 0) raise(ErrorKind::bad_argument, "hecke: needs --p and --ell");
  InputSeries in = load_input(cfg, 0);
  HeckeContext ctx;
  ctx.p = cfg.p;
  ctx.lambda = cfg.lambda;
  ctx.chi_p = cfg.chi;
  ctx.ell = cfg.ell;
  ctx.j = cfg.j;
  ctx.level = cfg.level;
  if (cfg.check) {
    AnnihilationResult res = annihilation_check(in.series, ctx, cfg.bound, cfg.sturm);
    Document doc("annihilation-check");
    doc.add("series_id", in.id);
    doc.add("p", cfg.p);
    doc.add("lambda", cfg.lambda);
    doc.add("chi_p", static_cast<int64_t>(cfg.chi));
    doc.add("ell_pow", ctx.ell_pow());
    doc.add("bound", res.bound);
    doc.add("annihilates", res.annihilates ? std::string("true") : std::string("false"));
    doc.add("witness", res.witness ? std::to_string(*res.witness) : std::string("-"));
    doc.add("reached_sturm", res.reached_sturm ? std::string("true") : std::string("false"));
    doc.add("toolkit_version", std::string(toolkit_version));
    doc.add("input_checksum", in.checksum);
    emit(cfg, std::move(doc),
         res.annihilates ? "annihilates up to " + std::to_string(res.bound)
                         : "fails at n = " + std::to_string(res.witness.value_or(-1)));
    return res.annihilates ? exit_ok : exit_counterexample;
  }
  if (cfg.out_path.empty()) raise(ErrorKind::bad_argument, "hecke: needs --out or --check");
  TruncatedSeries out = hecke_t_p2(in.series, ctx);
  write_cache(resolve_out(cfg.out_path), out);
  std::cerr << "wrote " << resolve_out(cfg.out_path) << "\n";
  return exit_ok;
}

int cmd_bounds(const RunConfig& cfg) {
  if (cfg.ell == 0) raise(ErrorKind::bad_argument, "bounds: needs --ell");
  uint64_t Q = cfg.Q ? cfg.Q : 3;
  // v needs Hecke-eigenbasis data nobody computes here; v = 0 is the
  // optimistic caller default and pessimistic mode takes v = j as a
  // sensitivity convention
  int64_t v = cfg.v_mode == "pessimistic" ? cfg.j : cfg.v;
  BoundReport rep = pipeline_bound_report(cfg.N, Q, cfg.ell, cfg.j, cfg.beta, v, cfg.r);
  Document doc = bound_report_document(rep);
  doc.add("v_mode", cfg.v_mode);
  doc.add("toolkit_version", std::string(toolkit_version));
  std::ostringstream sum;
  sum << "dim " << rep.d << ", sturm " << rep.sturm_ceiling << ", B = " << rep.ell << "^"
      << rep.B.exponent.get_str() << ", L = " << rep.L << ", grh_log2 = " << rep.grh_log2;
  emit(cfg, std::move(doc), sum.str());
  return exit_ok;
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.A < 1 || cfg.modulus < 2)
    raise(ErrorKind::bad_argument, "verify: needs --A >= 1 and --mod >= 2");
  CongruenceCertificate cert;
  std::string checksum, id;
  if (!cfg.cache_path.empty()) {
    // sparse progressions stream straight from the cache
    CacheReader reader(cfg.cache_path);
    id = "cache:" + cfg.cache_path;
    checksum = "fnv1a:" + std::to_string(reader.checksum());
    cert = verify_progression(reader, id, cfg.A, cfg.B, cfg.modulus, cfg.horizon);
  } else {
    int64_t needed = cfg.A * cfg.horizon + cfg.B + 1;
    InputSeries in = load_input(cfg, needed);
    id = in.id;
    checksum = in.checksum;
    cert = verify_progression(in.series, in.id, cfg.A, cfg.B, cfg.modulus, cfg.horizon);
  }
  Document doc = certificate_document(cert, checksum);
  std::ostringstream sum;
  sum << id << ": c(" << cfg.A << "n+" << cfg.B << ") mod " << cfg.modulus << " -> "
      << to_string(cert.status);
  if (cert.counterexample_n) sum << " at n = " << *cert.counterexample_n;
  emit(cfg, std::move(doc), sum.str());
  return cert.status == CertStatus::verified_to_horizon ? exit_ok : exit_counterexample;
}

int cmd_scan(const RunConfig& cfg) {
  if (cfg.A_set.empty() || cfg.modulus < 2)
    raise(ErrorKind::bad_argument, "scan: needs --A-set and --mod >= 2");
  int64_t amax = *std::max_element(cfg.A_set.begin(), cfg.A_set.end());
  int64_t needed = amax * cfg.horizon + amax;
  InputSeries in = load_input(cfg, needed);
  int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  auto hits = scan_progressions(in.series, in.id, cfg.modulus, cfg.A_set, cfg.horizon, threads);
  Document doc("scan-report");
  doc.add("series_id", in.id);
  doc.add("modulus", cfg.modulus);
  doc.add("horizon", cfg.horizon);
  doc.add("hits", static_cast<int64_t>(hits.size()));
  for (size_t i = 0; i < hits.size(); ++i) {
    std::string key = "hit." + std::to_string(i);
    doc.add(key + ".A", hits[i].A);
    doc.add(key + ".B", hits[i].B);
    doc.add(key + ".status", to_string(hits[i].status));
  }
  doc.add("toolkit_version", std::string(toolkit_version));
  doc.add("input_checksum", in.checksum);
  std::ostringstream sum;
  sum << hits.size() << " surviving progression(s)";
  for (auto& h : hits) sum << " (" << h.A.get_str() << "," << h.B.get_str() << ")";
  emit(cfg, std::move(doc), sum.str());
  return exit_ok;
}

int cmd_assemble(const RunConfig& cfg) {
  if (cfg.p == 0 || cfg.ell == 0 || cfg.Q == 0)
    raise(ErrorKind::bad_argument, "assemble: needs --p, --ell and --Q");
  Catalog cat = open_catalog(cfg);
  const MockThetaSpec& spec = cat.require(cfg.series);
  AssembledCongruence ac = assemble_congruence(cfg.p, cfg.ell, cfg.m_exp, cfg.Q, spec);
  Document doc("assembled-congruence");
  doc.add("series", spec.name);
  doc.add("p", cfg.p);
  doc.add("ell", cfg.ell);
  doc.add("m", cfg.m_exp);
  doc.add("Q", cfg.Q);
  doc.add("A_offset", ac.a);
  doc.add("A_mod", ac.a_mod);
  doc.add("B", ac.b_offset);
  doc.add("B_prime", ac.b_prime);
  doc.add("B_prime_integral", ac.b_prime_integral ? std::string("true") : std::string("false"));
  doc.add("q_equals_ell", ac.q_equals_ell ? std::string("true") : std::string("false"));
  doc.add("toolkit_version", std::string(toolkit_version));
  doc.add("input_checksum", catalog_checksum(cfg));
  std::ostringstream sum;
  sum << "b(" << ac.a_mod.get_str() << " n + " << ac.b_offset.get_str() << ") = 0 mod " << cfg.ell
      << "^" << cfg.j << ", B' = " << ac.b_prime.get_str();
  emit(cfg, std::move(doc), sum.str());
  return exit_ok;
}

int cmd_pipeline(const RunConfig& cfg) {
  if (cfg.series.empty() || cfg.ell == 0 || cfg.trunc < 1)
    raise(ErrorKind::bad_argument, "pipeline: needs --series, --ell and --trunc");
  Catalog cat = open_catalog(cfg);
  PipelineOptions opt;
  opt.spec = cat.require(cfg.series);
  opt.catalog_checksum = catalog_checksum(cfg);
  opt.ell = cfg.ell;
  opt.j = cfg.j;
  opt.trunc = cfg.trunc;
  opt.q_mode = cfg.q_mode;
  opt.min_ord_div = cfg.min_ord_div;
  opt.min_ord_nondiv = cfg.min_ord_nondiv;
  if (cfg.chi_rule == "auto") opt.chi.kind = ChiRule::Kind::automatic;
  else if (cfg.chi_rule.rfind("kronecker:", 0) == 0) {
    opt.chi.kind = ChiRule::Kind::kronecker;
    opt.chi.D = std::stoll(cfg.chi_rule.substr(10));
  } else {
    opt.chi.kind = ChiRule::Kind::fixed;
    opt.chi.fixed_value = std::stoi(cfg.chi_rule);
  }
  opt.restrict_class = (cfg.p_class == "restrict");
  opt.p_max = cfg.p_max;
  opt.bound = cfg.bound;
  opt.horizon = cfg.horizon > 0 ? cfg.horizon : -1;
  opt.v = cfg.v;
  opt.r = cfg.r;
  PipelineResult res = run_pipeline(opt);
  std::ostringstream sum;
  sum << "pipeline " << opt.spec.name << " mod " << cfg.ell << "^" << cfg.j << ": "
      << (res.hunt_found ? "annihilating prime found" : "no annihilating prime below cap") << ", "
      << res.certificates.size() << " certificate(s)";
  emit(cfg, std::move(res.document), sum.str());
  return res.exit_code;
}

}  // namespace

int run(const RunConfig& cfg) {
  try {
    if (cfg.command == "expand") return cmd_expand(cfg);
    if (cfg.command == "twist") return cmd_twist(cfg);
    if (cfg.command == "project") return cmd_project(cfg);
    if (cfg.command == "hecke") return cmd_hecke(cfg);
    if (cfg.command == "bounds") return cmd_bounds(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "scan") return cmd_scan(cfg);
    if (cfg.command == "assemble") return cmd_assemble(cfg);
    if (cfg.command == "pipeline") return cmd_pipeline(cfg);
    raise(ErrorKind::bad_argument, "unknown command: " + cfg.command);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_bad_config;
  }
}

PipelineResult run_pipeline(const PipelineOptions& opt) {
  PipelineResult res;
  Document& doc = res.document;
  const MockThetaSpec& spec = opt.spec;
  spec.validate();
  if (!is_prime(opt.ell) || opt.ell == 2)
    raise(ErrorKind::bad_argument, "pipeline: ell must be an odd prime");
  if (gcd_u64(opt.ell, spec.level) != 1)
    raise(ErrorKind::bad_argument, "pipeline: ell must be coprime to the level");
  uint64_t ell_pow = 1;
  for (int64_t i = 0; i < opt.j; ++i) ell_pow *= opt.ell;

  doc.add("series", spec.name);
  doc.add("ell", opt.ell);
  doc.add("j", opt.j);
  doc.add("modulus", ell_pow);
  doc.add("trunc", opt.trunc);
  doc.add("delta", spec.delta);
  doc.add("tau", spec.tau);
  doc.add("level", spec.level);

  // 1. expand M(q) mod ell^j
  std::cerr << "pipeline: expanding " << spec.name << " to " << opt.trunc << " terms mod "
            << ell_pow << "\n";
  TruncatedSeries m_series = expand_series(spec, opt.trunc, ell_pow);
  std::string id = spec.name;

  // 2. reindex to F(z) = q^tau M(q^delta)
  TruncatedSeries f_series = reindex_to_F(m_series, spec);
  id += "|F[d" + std::to_string(spec.delta) + ",t" + std::to_string(spec.tau) + "]";
  doc.add("F_val", f_series.val());
  doc.add("F_trunc", f_series.trunc());

  // 3. twist prime
  uint64_t Q;
  if (opt.q_mode == "auto") {
    Q = select_twist_prime(spec.shadow_deltas, default_forbidden_twist_primes(spec.level, opt.ell));
  } else if (opt.q_mode == "ell") {
    Q = opt.ell;  // permitted when alpha = 0; checked below once alpha is known
    for (int64_t d : spec.shadow_deltas)
      if (jacobi_symbol(d, Q) != 1)
        raise(ErrorKind::bad_argument, "pipeline: Q = ell does not split the shadow support");
  } else {
    Q = static_cast<uint64_t>(std::stoull(opt.q_mode));
    if (!is_prime(Q) || Q % 2 == 0) raise(ErrorKind::bad_argument, "pipeline: Q must be an odd prime");
    for (int64_t d : spec.shadow_deltas)
      if (jacobi_symbol(d, Q) != 1)
        raise(ErrorKind::bad_argument, "pipeline: chosen Q does not split the shadow support");
  }
  doc.add("Q", Q);
  doc.add("q_mode", opt.q_mode);

  // 4. hat filter; the nonholomorphic support -delta_i m^2 and the principal
  // part land outside {n : (-n/Q) = -1}, so the result is holomorphic at
  // infinity and the window can be clipped to n >= 0
  TruncatedSeries hat = hat_filter(f_series, Q);
  hat = drop_below(hat, 0);
  id += "|hat[Q" + std::to_string(Q) + "]";

  // 5. alpha, beta from the caller-supplied cusp-order minima
  AlphaBeta ab = alpha_beta(opt.min_ord_div, opt.min_ord_nondiv, opt.ell);
  doc.add("min_ord_div", opt.min_ord_div);
  doc.add("min_ord_nondiv", opt.min_ord_nondiv);
  doc.add("alpha", ab.alpha);
  doc.add("beta", ab.beta);
  if (opt.q_mode == "ell" && ab.alpha != 0)
    raise(ErrorKind::bad_argument, "pipeline: Q = ell is only available when alpha = 0");

  // 6. projection
  TruncatedSeries proj = treneer_projection(hat, opt.ell, ab.alpha);
  id += "|proj[l" + std::to_string(opt.ell) + ",a" + std::to_string(ab.alpha) + "]";
  doc.add("projected_trunc", proj.trunc());

  // 7. ambient-space data and bounds
  int64_t ell_beta = 1;
  for (int64_t i = 0; i < ab.beta; ++i) ell_beta *= static_cast<int64_t>(opt.ell);
  int64_t lambda = ell_beta * static_cast<int64_t>(opt.ell * opt.ell - 1) / 2;
  uint64_t twisted = level_after_double_twist(spec.level, Q);
  uint64_t hecke_level = twisted * opt.ell * opt.ell;
  uint64_t class_modulus = twisted * ell_pow;
  doc.add("lambda", lambda);
  doc.add("hecke_level", hecke_level);
  doc.add("class_modulus", class_modulus);
  BoundReport bounds = pipeline_bound_report(spec.level / 4, Q, opt.ell, opt.j, ab.beta, opt.v, opt.r);
  doc.add("dim_S", bounds.d);
  doc.add("sturm_bound", bounds.sturm_ceiling);
  doc.add("B_exponent", bounds.B.exponent);
  doc.add("L", bounds.L);
  doc.add("grh_bound_log2", bounds.grh_log2);
  doc.add("unconditional_log2_pre_A1", bounds.unconditional_log2.decimal);

  // 8. hunt for an annihilating prime
  HuntOptions hunt;
  hunt.ell = opt.ell;
  hunt.j = opt.j;
  hunt.alpha = ab.alpha;
  hunt.lambda = lambda;
  hunt.chi = opt.chi;
  hunt.hecke_level = hecke_level;
  hunt.class_modulus = class_modulus;
  hunt.restrict_class = opt.restrict_class;
  hunt.p_max = opt.p_max;
  hunt.bound = opt.bound;
  hunt.sturm = bounds.sturm_ceiling;
  std::cerr << "pipeline: hunting annihilating prime p <= " << opt.p_max << " ("
            << (opt.restrict_class ? "restricted class" : "all admissible") << ", chi "
            << opt.chi.describe() << ")\n";
  HuntResult hr = hunt_annihilating_prime(proj, hunt);
  doc.add("hunt_p_max", opt.p_max);
  doc.add("hunt_bound", hunt.bound);
  doc.add("hunt_class", opt.restrict_class ? std::string("restrict") : std::string("all"));
  doc.add("hunt_chi_rule", opt.chi.describe());
  doc.add("hunt_attempts", static_cast<int64_t>(hr.attempts.size()));
  for (size_t i = 0; i < hr.attempts.size(); ++i) {
    std::ostringstream os;
    os << "p=" << hr.attempts[i].p << " chi=" << hr.attempts[i].chi
       << " witness_n=" << hr.attempts[i].witness;
    doc.add("hunt_attempt." + std::to_string(i), os.str());
  }
  res.hunt_found = hr.hit.has_value();
  doc.add("hunt_found", res.hunt_found ? std::string("true") : std::string("false"));
  if (!hr.hit) {
    res.exit_code = exit_ok;
    doc.add("certificates", static_cast<int64_t>(0));
    doc.add("toolkit_version", std::string(toolkit_version));
    doc.add("input_checksum", opt.catalog_checksum);
    return res;
  }
  const HuntHit& hit = *hr.hit;
  doc.add("p", hit.p);
  doc.add("chi_p", static_cast<int64_t>(hit.chi));
  doc.add("annihilation_bound", hit.annihilation.bound);
  doc.add("annihilation_reached_sturm",
          hit.annihilation.reached_sturm ? std::string("true") : std::string("false"));

  // 9. assemble the progression; the theorem-level m equals alpha here
  AssembledCongruence ac = assemble_congruence(hit.p, opt.ell, ab.alpha, Q, spec);
  doc.add("A_offset", ac.a);
  doc.add("A_mod", ac.a_mod);
  doc.add("B", ac.b_offset);
  doc.add("B_prime", ac.b_prime);
  // the source statement carries exponent p^4 ell^m Q while the derivation
  // lands on p^4 ell^{m+1} Q; the artifact follows the derivation and
  // records both forms
  doc.add("A_mod_form_proof", ac.q_equals_ell ? std::string("p^4*ell") : std::string("p^4*ell^(m+1)*Q"));
  doc.add("A_mod_form_statement", ac.q_equals_ell ? std::string("p^4*ell") : std::string("p^4*ell^m*Q"));

  // 10. verify on both sides of the reindexing
  auto feasible_horizon = [](const TruncatedSeries& s, const mpz_class& A, const mpz_class& B) {
    mpz_class h = (mpz_class(s.trunc()) - 1 - B) / A;
    return h < 0 ? int64_t(-1) : static_cast<int64_t>(h.get_si());
  };
  if (!ac.b_prime_integral)
    raise(ErrorKind::bad_argument, "pipeline: B' is not integral for this catalog entry");
  int64_t horizon_m = feasible_horizon(m_series, ac.a_mod, mpz_class(ac.b_prime.get_num()));
  if (opt.horizon >= 0) {
    if (opt.horizon > horizon_m)
      raise(ErrorKind::window_exceeded,
            "pipeline: requested horizon " + std::to_string(opt.horizon) +
                " exceeds the feasible M-side horizon " + std::to_string(horizon_m));
    horizon_m = opt.horizon;
  }
  if (horizon_m < 0)
    raise(ErrorKind::window_exceeded, "pipeline: no feasible M-side horizon; increase --trunc");

  CongruenceCertificate mcert = verify_progression(m_series, spec.name, ac.a_mod,
                                                   mpz_class(ac.b_prime.get_num()), ell_pow, horizon_m);
  if (hit.annihilation.reached_sturm && mcert.status == CertStatus::verified_to_horizon)
    mcert.status = CertStatus::sturm_certified;
  mcert.provenance.emplace_back("Q", std::to_string(Q));
  mcert.provenance.emplace_back("alpha", std::to_string(ab.alpha));
  mcert.provenance.emplace_back("beta", std::to_string(ab.beta));
  mcert.provenance.emplace_back("p", std::to_string(hit.p));
  mcert.provenance.emplace_back("lambda", std::to_string(lambda));
  mcert.provenance.emplace_back("chi_p", std::to_string(hit.chi));
  mcert.provenance.emplace_back("A", std::to_string(ac.a));
  mcert.provenance.emplace_back("pipeline_id", id);
  mcert.provenance.emplace_back("b_side_A_mod", ac.a_mod.get_str());
  mcert.provenance.emplace_back("b_side_B", ac.b_offset.get_str());
  mcert.provenance.emplace_back("a_mod_exponent_statement_form", "p^4*ell^m*Q");
  mcert.provenance.emplace_back("a_mod_exponent_proof_form", "p^4*ell^(m+1)*Q");

  int64_t horizon_f = feasible_horizon(f_series, ac.a_mod, ac.b_offset);
  std::optional<CongruenceCertificate> fcert;
  if (horizon_f >= 0) {
    fcert = verify_progression(f_series, id, ac.a_mod, ac.b_offset, ell_pow, horizon_f);
  }

  res.certificates.push_back(mcert);
  res.all_verified = mcert.status != CertStatus::counterexample &&
                     (!fcert || fcert->status != CertStatus::counterexample);
  doc.add("certificates", static_cast<int64_t>(res.certificates.size()));
  doc.add("certificate.0.series_id", mcert.series_id);
  doc.add("certificate.0.A", mcert.A);
  doc.add("certificate.0.B", mcert.B);
  doc.add("certificate.0.modulus", mcert.modulus);
  doc.add("certificate.0.horizon", mcert.horizon);
  doc.add("certificate.0.status", to_string(mcert.status));
  if (fcert) {
    doc.add("b_side_horizon", fcert->horizon);
    doc.add("b_side_status", to_string(fcert->status));
  }
  doc.add("toolkit_version", std::string(toolkit_version));
  doc.add("input_checksum", opt.catalog_checksum);
  res.exit_code = res.all_verified ? exit_ok : exit_counterexample;
  return res;
}

}  // namespace qcong
