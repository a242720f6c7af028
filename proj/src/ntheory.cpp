#include "qcong/ntheory.hpp"

#include "qcong/error.hpp"

#include <algorithm>
#include <numeric>

namespace qcong {

namespace {

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 0) raise(ErrorKind::bad_argument, "pow_mod: zero modulus");
  if (m == 1) return 0;
  uint64_t result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // These witnesses are exact for all n < 2^64.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < r - 1; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

uint64_t next_prime(uint64_t n) {
  uint64_t c = n + 1;
  if (c <= 2) return 2;
  if (c % 2 == 0) ++c;
  while (!is_prime(c)) c += 2;
  return c;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

uint64_t lcm_u64(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / std::gcd(a, b) * b;
}

uint64_t inv_mod(uint64_t a, uint64_t m) {
  if (m == 0) raise(ErrorKind::bad_argument, "inv_mod: zero modulus");
  a %= m;
  int64_t t = 0, new_t = 1;
  int64_t r = static_cast<int64_t>(m), new_r = static_cast<int64_t>(a);
  while (new_r != 0) {
    int64_t q = r / new_r;
    std::swap(t -= q * new_t, new_t);
    std::swap(r -= q * new_r, new_r);
  }
  if (r != 1) raise(ErrorKind::bad_argument, "inv_mod: not invertible");
  if (t < 0) t += static_cast<int64_t>(m);
  return static_cast<uint64_t>(t);
}

std::vector<std::pair<uint64_t, int>> factorize(uint64_t n) {
  std::vector<std::pair<uint64_t, int>> out;
  if (n < 2) return out;
  for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

uint64_t radical(uint64_t n) {
  uint64_t r = 1;
  for (auto [p, e] : factorize(n)) r *= p;
  return r;
}

std::vector<uint64_t> divisors(uint64_t n) {
  std::vector<uint64_t> out{1};
  for (auto [p, e] : factorize(n)) {
    size_t base = out.size();
    uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

uint64_t euler_phi(uint64_t n) {
  uint64_t r = n;
  for (auto [p, e] : factorize(n)) r -= r / p;
  return r;
}

}
