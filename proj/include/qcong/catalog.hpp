#pragma once

#include "qcong/series.hpp"

#include <string>
#include <vector>

namespace qcong {

// One Pochhammer factor of an Eulerian summand, applied at summation index
// n as (sign q^a; q^b)_{s1*n+s0} raised to `power` (negative = denominator).
struct FactorPattern {
  int sign = 1;
  int64_t a = 1;
  int64_t b = 1;
  int64_t s1 = 1;
  int64_t s0 = 0;
  int64_t power = -1;
};

// Eulerian term rule: summand n contributes q^{e2 n^2 + e1 n + e0} times its
// factor patterns, summed from n = nstart for as long as the leading
// exponent stays inside the window.
struct TermRule {
  int64_t nstart = 0;
  int64_t e2 = 0, e1 = 0, e0 = 0;
  std::vector<FactorPattern> factors;

  int64_t exponent(int64_t n) const { return e2 * n * n + e1 * n + e0; }
};

enum class SeriesKind { product, eulerian };

// Catalog entry: how to generate the series plus the reindexing and
// completed-form metadata (delta, tau, level, shadow support). The shipped
// data file carries standard-literature defaults for the metadata.
struct MockThetaSpec {
  std::string name;
  SeriesKind kind = SeriesKind::eulerian;
  TermRule term_rule;
  int64_t delta = 1;
  int64_t tau = 0;
  uint64_t level = 4;
  std::vector<int64_t> shadow_deltas;

  void validate() const;
};

struct Catalog {
  std::vector<MockThetaSpec> entries;

  const MockThetaSpec* find(const std::string& name) const;
  const MockThetaSpec& require(const std::string& name) const;
};

Catalog load_catalog(const std::string& path);

// Catalog file discovery: QCONG_CATALOG env var, then ./data/catalog.qcat,
// then the compiled-in default location.
std::string default_catalog_path();

// Expand a catalog entry to coefficients of q^0 .. q^{T-1}.
TruncatedSeries expand_series(const MockThetaSpec& spec, int64_t T, uint64_t modulus = 0);

// Partition numbers p(0..T-1). Production path is the pentagonal-number
// recurrence; the product route below must agree and serves as cross-check.
TruncatedSeries partition_series(int64_t T, uint64_t modulus = 0);
TruncatedSeries partition_series_product(int64_t T, uint64_t modulus = 0);

// F(z) = q^tau M(q^delta): b(delta*n + tau) = c(n), other coefficients zero.
TruncatedSeries reindex_to_F(const TruncatedSeries& s, const MockThetaSpec& spec);
// Inverse; errors (with the offending exponent) if the support of s is not
// contained in the progression delta*Z + tau.
TruncatedSeries reindex_from_F(const TruncatedSeries& s, const MockThetaSpec& spec);

}
