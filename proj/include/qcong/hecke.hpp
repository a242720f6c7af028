#pragma once

#include "qcong/series.hpp"

#include <cstdint>
#include <optional>

#include <gmpxx.h>

namespace qcong {

// Everything the half-integral-weight operator T(p^2) needs. The weight is
// lambda + 1/2; chi_p is the Nebentypus value at p; ell^j is the prime power
// whose congruences are being certified; level is the 4N of the ambient
// space.
struct HeckeContext {
  uint64_t p = 3;
  int64_t lambda = 1;
  int chi_p = 1;  // in {-1, 0, 1}
  uint64_t ell = 5;
  int64_t j = 1;
  uint64_t level = 4;
  // T(p^2) itself never involves ell; the coprimality gcd(p, ell) = 1 is a
  // requirement of the congruence theorems, so certificate-producing callers
  // keep this set while bare operator use may relax it.
  bool require_ell_coprime = true;

  uint64_t ell_pow() const;
  void validate() const;
};

// Coefficient action: the output coefficient of q^n is
//   a(p^2 n) + ((-1)^lambda n / p) chi(p) p^{lambda-1} a(n) + p^{2lambda-1} a(n/p^2)
// with a(n/p^2) = 0 when p^2 does not divide n. Output trunc is
// floor((s.trunc - 1)/p^2) + 1: only those exponents are certain.
TruncatedSeries hecke_t_p2(const TruncatedSeries& s, const HeckeContext& ctx);

// Coefficient of q^n becomes a(ell^alpha n) when ell does not divide n, else
// zero; trunc = floor((s.trunc - 1)/ell^alpha) + 1.
TruncatedSeries treneer_projection(const TruncatedSeries& s, uint64_t ell, int64_t alpha);

struct AlphaBeta {
  int64_t alpha = 0;
  int64_t beta = 0;
};

// Smallest nonnegative alpha with -ell^alpha < 4 * min_ord_div and smallest
// beta with -ell^beta < min_ord_nondiv. The two minima of cusp orders are
// caller-supplied inputs.
AlphaBeta alpha_beta(int64_t min_ord_div, int64_t min_ord_nondiv, uint64_t ell);

struct SturmBound {
  mpq_class value;   // (k/12) N prod_{p|N} (1 + 1/p), exact
  int64_t ceiling;
};

SturmBound sturm_bound(int64_t k, uint64_t N);

struct AnnihilationResult {
  bool annihilates = false;
  std::optional<int64_t> witness;  // first exponent with a nonvanishing coefficient
  int64_t bound = 0;               // largest exponent checked
  bool reached_sturm = false;      // bound >= the Sturm bound the caller supplied
  std::optional<int64_t> sturm_ceiling;
};

// True iff every coefficient of hecke_t_p2(s, ctx) with exponent <= bound
// vanishes mod ell^j. `sturm` (when supplied) is recorded so consumers can
// tell a rigorous annihilation certificate from an empirical horizon check.
AnnihilationResult annihilation_check(const TruncatedSeries& s, const HeckeContext& ctx,
                                      int64_t bound, std::optional<int64_t> sturm = std::nullopt);

}
