#pragma once

#include "qcong/series.hpp"

#include <cstdint>
#include <vector>

namespace qcong {

struct TwistParams {
  uint64_t Q = 3;          // odd prime
  uint64_t level_in = 4;   // N
  uint64_t level_out = 0;  // lcm(N*Q, Q^2)
};

TwistParams make_twist_params(uint64_t Q, uint64_t N);

// Jacobi symbol (a/n) for odd positive n and any integer a; equals the
// Legendre symbol for prime n. Binary reciprocity, O(log a log n).
int jacobi_symbol(int64_t a, uint64_t n);

// Multiply the coefficient of q^n by (n/Q); with a modulus, -1 acts as
// modulus - 1.
TruncatedSeries twist_coefficients(const TruncatedSeries& s, uint64_t Q);

// Keep a(n) exactly when (-n/Q) = -1, zero the rest (direct filter).
TruncatedSeries hat_filter(const TruncatedSeries& s, uint64_t Q);

// The same filter built from two coefficient twists:
//   -(1/2)(-1/Q) * twist(s - (-1/Q) twist(s, Q), Q).
// Requires exact input or an odd modulus (the path divides by 2); must agree
// with hat_filter wherever both are defined.
TruncatedSeries hat_filter_composite(const TruncatedSeries& s, uint64_t Q);

// Smallest odd prime Q >= start with Q not in `forbidden` and
// (delta_i / Q) = 1 for every shadow delta. Errors when the search budget
// `cap` is exhausted.
uint64_t select_twist_prime(const std::vector<int64_t>& shadow_deltas,
                            const std::vector<uint64_t>& forbidden, uint64_t start = 3,
                            uint64_t cap = 1000000);

// Primes dividing 4*N*ell: the default exclusion set for twist primes.
std::vector<uint64_t> default_forbidden_twist_primes(uint64_t level, uint64_t ell);

// Level of a level-N form twisted by a character mod M: lcm(N*M, M^2).
uint64_t twisted_level(uint64_t N, uint64_t M);

// Level after the double twist by the quadratic character mod Q: 4N * Q^3.
uint64_t level_after_double_twist(uint64_t four_n, uint64_t Q);

}
