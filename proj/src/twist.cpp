#include "qcong/twist.hpp"

#include "qcong/error.hpp"
#include "qcong/kernels.hpp"
#include "qcong/ntheory.hpp"

#include <algorithm>

namespace qcong {

TwistParams make_twist_params(uint64_t Q, uint64_t N) {
  if (Q < 3 || Q % 2 == 0 || !is_prime(Q)) raise(ErrorKind::bad_argument, "twist prime must be an odd prime");
  return TwistParams{Q, N, twisted_level(N, Q)};
}

int jacobi_symbol(int64_t a, uint64_t n) {
  if (n == 0 || n % 2 == 0) raise(ErrorKind::bad_argument, "jacobi_symbol: n must be odd and positive");
  // (a/n) is a character mod n; reduce a into [0, n) first.
  int64_t nn = static_cast<int64_t>(n);
  uint64_t x = static_cast<uint64_t>(((a % nn) + nn) % nn);
  uint64_t y = n;
  int r = 1;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      uint64_t y8 = y & 7;
      if (y8 == 3 || y8 == 5) r = -r;
    }
    std::swap(x, y);
    if ((x & 3) == 3 && (y & 3) == 3) r = -r;
    x %= y;
  }
  return y == 1 ? r : 0;
}

namespace {

enum class SymbolAction { zero, keep, negate };

// Per-residue action table for coefficientwise symbol transforms; index by
// the exponent's residue mod Q.
std::vector<SymbolAction> symbol_table(uint64_t Q, bool filter_hat) {
  std::vector<SymbolAction> table(Q);
  for (uint64_t r = 0; r < Q; ++r) {
    int s = filter_hat ? jacobi_symbol(-static_cast<int64_t>(r), Q) : jacobi_symbol(static_cast<int64_t>(r), Q);
    if (filter_hat) {
      table[r] = (s == -1) ? SymbolAction::keep : SymbolAction::zero;
    } else {
      table[r] = (s == 0) ? SymbolAction::zero : (s == 1 ? SymbolAction::keep : SymbolAction::negate);
    }
  }
  return table;
}

TruncatedSeries apply_symbol_table(const TruncatedSeries& s, uint64_t Q,
                                   const std::vector<SymbolAction>& table) {
  auto block = s.block();
  int64_t q = static_cast<int64_t>(Q);
  size_t start_res = static_cast<size_t>(((s.val() % q) + q) % q);
  std::visit(
      [&](auto& v) {
        using V = std::decay_t<decltype(v)>;
        size_t r = start_res;
        if constexpr (std::is_same_v<V, std::vector<BigInt>>) {
          for (auto& c : v) {
            if (table[r] == SymbolAction::zero) c = 0;
            else if (table[r] == SymbolAction::negate) c = -c;
            if (++r == Q) r = 0;
          }
        } else {
          using Cell = typename V::value_type;
          Cell m = static_cast<Cell>(s.modulus());
          for (auto& c : v) {
            if (table[r] == SymbolAction::zero) c = 0;
            else if (table[r] == SymbolAction::negate) c = c ? static_cast<Cell>(m - c) : c;
            if (++r == Q) r = 0;
          }
        }
      },
      block);
  return TruncatedSeries::from_block(s.val(), s.modulus(), std::move(block));
}

}  // namespace

TruncatedSeries twist_coefficients(const TruncatedSeries& s, uint64_t Q) {
  if (Q < 3 || Q % 2 == 0 || !is_prime(Q)) raise(ErrorKind::bad_argument, "twist prime must be an odd prime");
  return apply_symbol_table(s, Q, symbol_table(Q, false));
}

TruncatedSeries hat_filter(const TruncatedSeries& s, uint64_t Q) {
  if (Q < 3 || Q % 2 == 0 || !is_prime(Q)) raise(ErrorKind::bad_argument, "twist prime must be an odd prime");
  return apply_symbol_table(s, Q, symbol_table(Q, true));
}

TruncatedSeries hat_filter_composite(const TruncatedSeries& s, uint64_t Q) {
  if (Q < 3 || Q % 2 == 0 || !is_prime(Q)) raise(ErrorKind::bad_argument, "twist prime must be an odd prime");
  if (!s.exact() && s.modulus() % 2 == 0)
    raise(ErrorKind::bad_argument,
          "hat_filter_composite divides by 2 and needs an odd modulus; use the direct filter");
  int eps = jacobi_symbol(-1, Q);
  TruncatedSeries t1 = twist_coefficients(s, Q);
  TruncatedSeries tilde = (eps == 1) ? series_sub(s, t1) : series_add(s, t1);
  TruncatedSeries t2 = twist_coefficients(tilde, Q);

  // scale by -(1/2) * eps
  auto block = t2.block();
  std::visit(
      [&](auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::vector<BigInt>>) {
          for (auto& c : v) {
            if (mpz_odd_p(c.get_mpz_t()))
              raise(ErrorKind::bad_argument, "hat_filter_composite: odd intermediate coefficient");
            mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), 2);
            if (eps == 1) c = -c;
          }
        } else {
          using Cell = typename V::value_type;
          uint64_t m = t2.modulus();
          uint64_t inv2 = inv_mod(2, m);
          uint64_t factor = (eps == 1) ? (m - inv2) % m : inv2;
          const auto& K = kernels::ops<Cell>();
          K.scale_mod(v.data(), v.data(), v.size(), static_cast<Cell>(factor), static_cast<Cell>(m));
        }
      },
      block);
  return TruncatedSeries::from_block(t2.val(), t2.modulus(), std::move(block));
}

uint64_t select_twist_prime(const std::vector<int64_t>& shadow_deltas,
                            const std::vector<uint64_t>& forbidden, uint64_t start, uint64_t cap) {
  if (shadow_deltas.empty()) raise(ErrorKind::bad_argument, "select_twist_prime: empty shadow support");
  uint64_t q = std::max<uint64_t>(start, 3);
  if (q % 2 == 0) ++q;
  for (; q <= cap; q += 2) {
    if (!is_prime(q)) continue;
    if (std::find(forbidden.begin(), forbidden.end(), q) != forbidden.end()) continue;
    bool ok = true;
    for (int64_t d : shadow_deltas) {
      if (jacobi_symbol(d, q) != 1) {
        ok = false;
        break;
      }
    }
    if (ok) return q;
  }
  raise(ErrorKind::search_exhausted,
        "select_twist_prime: no admissible prime below cap " + std::to_string(cap));
}

std::vector<uint64_t> default_forbidden_twist_primes(uint64_t level, uint64_t ell) {
  std::vector<uint64_t> out;
  for (auto [p, e] : factorize(4 * level * ell)) out.push_back(p);
  return out;
}

uint64_t twisted_level(uint64_t N, uint64_t M) {
  if (N < 1 || M < 1) raise(ErrorKind::bad_argument, "twisted_level: N, M must be positive");
  return lcm_u64(N * M, M * M);
}

uint64_t level_after_double_twist(uint64_t four_n, uint64_t Q) {
  return four_n * Q * Q * Q;
}

}  // namespace qcong
