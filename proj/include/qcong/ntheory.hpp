#pragma once

#include <cstdint>
#include <vector>

namespace qcong {

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(uint64_t n);

// Smallest prime > n (n + 1 if that is prime).
uint64_t next_prime(uint64_t n);

uint64_t gcd_u64(uint64_t a, uint64_t b);
uint64_t lcm_u64(uint64_t a, uint64_t b);

// (base^exp) mod m, m >= 1.
uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m);

// Inverse of a mod m; requires gcd(a, m) = 1.
uint64_t inv_mod(uint64_t a, uint64_t m);

// Prime factorization by trial division, (prime, exponent) pairs in
// ascending prime order. Intended for level-sized inputs.
std::vector<std::pair<uint64_t, int>> factorize(uint64_t n);

// Product of the distinct primes dividing n (radical); radical(1) = 1.
uint64_t radical(uint64_t n);

// All divisors of n, ascending.
std::vector<uint64_t> divisors(uint64_t n);

uint64_t euler_phi(uint64_t n);

}
