#pragma once

#include "qcong/report.hpp"

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace qcong {

// dim S_k(Gamma_0(N)) for even k >= 4, trivial character, via the standard
// index / elliptic-point / cusp-count formula.
int64_t dim_cusp_forms(int64_t k, uint64_t N);

// Genus of X_0(N) (exposed for the dimension-table cross-checks).
int64_t genus_x0(uint64_t N);

// B = ell^{4 d r (d v + j)}, the rational-coefficient case. The exponent is
// returned separately because B itself is astronomically large for pipeline
// parameters; evaluate() materializes it only below a bit cap.
struct BValue {
  uint64_t ell = 0;
  mpz_class exponent;

  double log2() const;
  std::optional<mpz_class> evaluate(uint64_t max_bits = uint64_t(1) << 20) const;
};

BValue compute_B(uint64_t ell, int64_t j, int64_t d, int64_t r, int64_t v);

// The general product form with caller-supplied per-prime (r_m, v_m, a_m)
// exponent data; a_m plays the role the rational case fills with j.
struct BFactorInput {
  int64_t r = 1;
  int64_t v = 0;
  int64_t a = 1;
};
BValue compute_B_general(uint64_t ell, int64_t d, const std::vector<BFactorInput>& factors);

// L = ell * radical(N).
uint64_t compute_L(uint64_t ell, uint64_t N);

// ceil(280 B^2 (ln B + ln L)^2), natural logs, high-precision evaluation.
mpz_class grh_bound(const mpz_class& B, const mpz_class& L);

// log2 of the GRH bound from the exponent form (usable when B is too large
// to materialize).
double grh_bound_log2(const BValue& B, uint64_t L);

// log2( 2 L^{B-1} B^B ) = 1 + (B-1) log2 L + B log2 B. The multiplier A1
// applies in the exponent and is carried symbolically. For pipeline-scale B
// the value overflows double, so a decimal rendering is provided as well.
struct LogScale {
  double approx = 0.0;      // +inf when not representable
  std::string decimal;      // high-precision scientific rendering
};
LogScale unconditional_bound_log2(const BValue& B, uint64_t L);
LogScale unconditional_bound_log2(const mpz_class& B, const mpz_class& L);

struct BoundReport {
  uint64_t ell = 0;
  int64_t j = 1;
  int64_t weight = 0;          // ell^beta (ell^2 - 1)
  uint64_t level = 0;          // 2 N Q^3 ell^2, the level of the ambient space
  uint64_t sturm_N = 0;        // the N the Sturm/L formulas are parameterized by (level / 2)
  int64_t d = 0;               // dim S
  int64_t sturm_ceiling = 0;   // s
  int64_t v = 0;
  int64_t r = 1;
  BValue B;
  std::optional<mpz_class> B_value;
  uint64_t L = 0;
  std::optional<mpz_class> grh_value;
  double grh_log2 = 0.0;
  LogScale unconditional_log2;
};

// Assemble the report for S = S_{ell^beta (ell^2-1)}(Gamma_0(2 N Q^3 ell^2)).
BoundReport pipeline_bound_report(uint64_t N, uint64_t Q, uint64_t ell, int64_t j, int64_t beta,
                                  int64_t v, int64_t r);

Document bound_report_document(const BoundReport& r);

}
