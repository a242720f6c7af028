#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace qcong {

using BigInt = mpz_class;

// Smallest unsigned cell whose range holds modulus^2 (so products of two
// reduced residues never overflow a cell). Returns the width in bytes.
int cell_bytes_for_modulus(uint64_t modulus);

// Truncated formal power series in q.
//
// A value represents sum_{e in [val, trunc)} c_e q^e with every coefficient
// of q^e for e < trunc known exactly; coefficients at e >= trunc are unknown
// (truncated away), coefficients below val are zero. val may be negative.
// With a modulus m >= 2 the coefficients live in Z/mZ and are stored reduced
// in [0, m); without one they are exact integers. Values are immutable after
// construction and all operations are pure, so series can be shared across
// threads freely.
class TruncatedSeries {
public:
  using CoeffBlock = std::variant<std::vector<BigInt>, std::vector<uint8_t>, std::vector<uint16_t>,
                                  std::vector<uint32_t>, std::vector<uint64_t>>;

  // Canonical empty/zero series: val == trunc == 0, exact.
  TruncatedSeries() = default;

  // Stored zeros on [val, trunc).
  static TruncatedSeries zeros(int64_t val, int64_t trunc, uint64_t modulus = 0);
  // Constant 1 with window [0, trunc).
  static TruncatedSeries one(int64_t trunc, uint64_t modulus = 0);
  static TruncatedSeries monomial(int64_t exponent, const BigInt& coefficient, int64_t trunc,
                                  uint64_t modulus = 0);
  // coeffs[i] is the coefficient of q^(val + i); trunc = val + coeffs.size().
  static TruncatedSeries from_coeffs(int64_t val, const std::vector<BigInt>& coeffs,
                                     uint64_t modulus = 0);
  // Low-level constructor used by generators: the block must already be
  // reduced and sized for the modulus (validated).
  static TruncatedSeries from_block(int64_t val, uint64_t modulus, CoeffBlock block);

  int64_t val() const { return val_; }
  int64_t trunc() const { return trunc_; }
  int64_t length() const { return trunc_ - val_; }
  uint64_t modulus() const { return modulus_; }
  bool exact() const { return modulus_ == 0; }
  bool empty_window() const { return trunc_ == val_; }

  // Coefficient of q^e: zero below val, error at or above trunc.
  BigInt coeff(int64_t e) const;
  uint64_t coeff_u64(int64_t e) const;  // modular series only
  bool is_zero() const;                 // all stored coefficients zero

  const CoeffBlock& block() const { return block_; }

  std::string to_string(int64_t max_terms = 12) const;

private:
  int64_t val_ = 0;
  int64_t trunc_ = 0;
  uint64_t modulus_ = 0;
  CoeffBlock block_ = std::vector<BigInt>{};
};

// Semantic equality: same modulus, same trunc, same coefficients on the
// stored windows (exponents below either val count as zero).
bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);
inline bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

// Coefficientwise sum/difference. Result window: val = min(vals),
// trunc = min(truncs). Errors on modulus mismatch.
TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b);

// Cauchy product. Result val = a.val + b.val,
// trunc = min(a.trunc + b.val, b.trunc + a.val); errors if that window is
// empty or the moduli mismatch.
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

inline TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) { return series_add(a, b); }
inline TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return series_sub(a, b); }
inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return series_mul(a, b); }

// s * 1/(1 - q^m): one ascending stride-m pass. m >= 1.
TruncatedSeries geometric_divide(const TruncatedSeries& s, int64_t m);
// s * (1 - q^m): the exact inverse pass.
TruncatedSeries geometric_multiply(const TruncatedSeries& s, int64_t m);
// s * (1 + q^m) and s * 1/(1 + q^m); same pass structure with flipped signs.
// Equivalent to the (1-q^{2m})/(1-q^m) composite, realized as a single pass.
TruncatedSeries multiply_one_plus(const TruncatedSeries& s, int64_t m);
TruncatedSeries divide_one_plus(const TruncatedSeries& s, int64_t m);

// (sign q^a; q^b)_n truncated at T: the product of (1 - sign q^{a+kb}) for
// 0 <= k < n. sign is +1 or -1; a, b >= 1; n >= 0.
TruncatedSeries pochhammer(int sign, int64_t a, int64_t b, int64_t n, int64_t T,
                           uint64_t modulus = 0);

// Reduce into Z/mZ. Input must be exact or carry a modulus divisible by m.
TruncatedSeries reduce_mod(const TruncatedSeries& s, uint64_t m);

// Multiply by q^k (window shifts with the data).
TruncatedSeries shifted(const TruncatedSeries& s, int64_t k);

// Shrink the window from above to new_trunc (<= trunc; never extends).
TruncatedSeries clipped(const TruncatedSeries& s, int64_t new_trunc);

// Raise val to new_val, dropping lower coefficients; errors with the
// offending exponent if a dropped coefficient is nonzero.
TruncatedSeries drop_below(const TruncatedSeries& s, int64_t new_val);

}
