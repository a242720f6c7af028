#pragma once

#include "qcong/catalog.hpp"
#include "qcong/congruence.hpp"
#include "qcong/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qcong {

// Exit codes shared by the CLI and the in-process runner.
inline constexpr int exit_ok = 0;
inline constexpr int exit_counterexample = 1;
inline constexpr int exit_bad_config = 2;
inline constexpr int exit_infeasible = 3;

struct RunConfig {
  std::string command;  // expand twist project hecke bounds scan verify assemble pipeline
  std::string series;
  std::string cache_path;
  std::string catalog_path;
  int64_t trunc = 0;
  uint64_t modulus = 0;

  // twist / project / hecke
  uint64_t Q = 0;
  uint64_t ell = 0;
  int64_t j = 1;
  int64_t alpha = 0;
  uint64_t p = 0;
  int64_t lambda = 1;
  int chi = 1;
  uint64_t level = 4;
  bool check = false;
  int64_t bound = 100;
  std::optional<int64_t> sturm;

  // bounds
  uint64_t N = 1;
  int64_t beta = 0;
  int64_t v = 0;
  std::string v_mode = "optimistic";  // optimistic (v as given) | pessimistic (v = j)
  int64_t r = 1;

  // scan / verify / assemble / pipeline
  int64_t A = 0;
  int64_t B = 0;
  int64_t horizon = 0;
  std::vector<int64_t> A_set;
  int64_t m_exp = 0;
  std::string q_mode = "auto";  // auto | ell | <number in Q>
  std::string chi_rule = "auto";
  std::string p_class = "restrict";  // restrict | all
  uint64_t p_max = 200;
  int64_t min_ord_div = 0;
  int64_t min_ord_nondiv = 0;

  std::string out_path;
  std::string format = "text";  // text | structured
  int threads = 0;              // 0 = machine parallelism
};

// Executes one command; artifacts land on disk, data goes to stdout,
// progress to stderr. Returns the process exit code.
int run(const RunConfig& cfg);

struct PipelineOptions {
  MockThetaSpec spec;
  std::string catalog_checksum;  // recorded in provenance
  uint64_t ell = 5;
  int64_t j = 1;
  int64_t trunc = 100000;
  std::string q_mode = "auto";
  int64_t min_ord_div = 0;
  int64_t min_ord_nondiv = 0;
  ChiRule chi;
  bool restrict_class = false;
  uint64_t p_max = 100;
  int64_t bound = 100;
  int64_t horizon = -1;  // -1 = largest feasible
  int64_t v = 0;
  int64_t r = 1;
};

struct PipelineResult {
  Document document{"pipeline-report"};
  std::vector<CongruenceCertificate> certificates;
  bool hunt_found = false;
  bool all_verified = true;
  int exit_code = exit_ok;
};

// expand -> reindex -> hat twist -> projection -> hunt -> assemble -> verify,
// with a provenance-complete report of every step.
PipelineResult run_pipeline(const PipelineOptions& opt);

}
