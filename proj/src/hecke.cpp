#include "qcong/hecke.hpp"

#include "qcong/error.hpp"
#include "qcong/ntheory.hpp"
#include "qcong/twist.hpp"

#include <vector>

namespace qcong {

uint64_t HeckeContext::ell_pow() const {
  uint64_t v = 1;
  for (int64_t i = 0; i < j; ++i) {
    if (v > UINT64_MAX / ell) raise(ErrorKind::bad_argument, "ell^j overflows");
    v *= ell;
  }
  return v;
}

void HeckeContext::validate() const {
  if (!is_prime(p)) raise(ErrorKind::bad_argument, "HeckeContext: p must be prime");
  if (lambda < 1)
    raise(ErrorKind::bad_argument,
          "HeckeContext: lambda must be >= 1 (weight 1/2 input makes p^{lambda-1} non-integral)");
  if (chi_p < -1 || chi_p > 1) raise(ErrorKind::bad_argument, "HeckeContext: chi_p must be -1, 0 or 1");
  if (!is_prime(ell) || ell == 2) raise(ErrorKind::bad_argument, "HeckeContext: ell must be an odd prime");
  if (j < 1) raise(ErrorKind::bad_argument, "HeckeContext: j must be >= 1");
  if (gcd_u64(p, 4 * level) != 1)
    raise(ErrorKind::bad_argument, "HeckeContext: p must be coprime to 4N");
  if (require_ell_coprime && p == ell)
    raise(ErrorKind::bad_argument, "HeckeContext: p must be coprime to ell");
}

TruncatedSeries hecke_t_p2(const TruncatedSeries& s, const HeckeContext& ctx) {
  ctx.validate();
  if (s.val() < 0) raise(ErrorKind::bad_argument, "hecke_t_p2: input must have val >= 0");
  if (s.trunc() < 1) raise(ErrorKind::empty_window, "hecke_t_p2: empty input window");
  if (ctx.p > (uint64_t(1) << 31)) raise(ErrorKind::bad_argument, "hecke_t_p2: p too large");
  int64_t p = static_cast<int64_t>(ctx.p);
  int64_t p2 = p * p;
  int64_t out_trunc = (s.trunc() - 1) / p2 + 1;
  size_t out_len = static_cast<size_t>(out_trunc);

  // ((-1)^lambda n / p) depends only on n mod p
  std::vector<int> sym(static_cast<size_t>(p));
  for (int64_t r = 0; r < p; ++r)
    sym[static_cast<size_t>(r)] = jacobi_symbol(ctx.lambda % 2 ? -r : r, ctx.p);

  return std::visit(
      [&](const auto& v) -> TruncatedSeries {
        using V = std::decay_t<decltype(v)>;
        auto stored = [&](int64_t e) -> decltype(v[0]) { return v[static_cast<size_t>(e - s.val())]; };
        auto has = [&](int64_t e) { return e >= s.val() && e < s.trunc(); };
        if constexpr (std::is_same_v<V, std::vector<BigInt>>) {
          BigInt pw1, pw2;
          mpz_ui_pow_ui(pw1.get_mpz_t(), ctx.p, static_cast<unsigned long>(ctx.lambda - 1));
          mpz_ui_pow_ui(pw2.get_mpz_t(), ctx.p, static_cast<unsigned long>(2 * ctx.lambda - 1));
          std::vector<BigInt> out(out_len);
          for (int64_t n = 0; n < out_trunc; ++n) {
            BigInt c = has(p2 * n) ? stored(p2 * n) : BigInt(0);
            int sgn = sym[static_cast<size_t>(n % p)] * ctx.chi_p;
            if (sgn != 0 && has(n)) {
              if (sgn > 0) mpz_addmul(c.get_mpz_t(), pw1.get_mpz_t(), stored(n).get_mpz_t());
              else mpz_submul(c.get_mpz_t(), pw1.get_mpz_t(), stored(n).get_mpz_t());
            }
            if (n % p2 == 0 && has(n / p2)) mpz_addmul(c.get_mpz_t(), pw2.get_mpz_t(), stored(n / p2).get_mpz_t());
            out[static_cast<size_t>(n)] = std::move(c);
          }
          return TruncatedSeries::from_block(0, 0, std::move(out));
        } else {
          using Cell = typename V::value_type;
          uint64_t m = s.modulus();
          uint64_t pw1 = pow_mod(ctx.p, static_cast<uint64_t>(ctx.lambda - 1), m);
          uint64_t pw2 = pow_mod(ctx.p, static_cast<uint64_t>(2 * ctx.lambda - 1), m);
          std::vector<Cell> out(out_len, 0);
          for (int64_t n = 0; n < out_trunc; ++n) {
            __uint128_t acc = has(p2 * n) ? static_cast<uint64_t>(stored(p2 * n)) : 0;
            int sgn = sym[static_cast<size_t>(n % p)] * ctx.chi_p;
            if (sgn != 0 && has(n)) {
              uint64_t t = static_cast<uint64_t>(
                  (static_cast<__uint128_t>(pw1) * static_cast<uint64_t>(stored(n))) % m);
              acc += sgn > 0 ? t : m - t;
            }
            if (n % p2 == 0 && has(n / p2)) {
              acc += static_cast<uint64_t>(
                  (static_cast<__uint128_t>(pw2) * static_cast<uint64_t>(stored(n / p2))) % m);
            }
            out[static_cast<size_t>(n)] = static_cast<Cell>(static_cast<uint64_t>(acc % m));
          }
          return TruncatedSeries::from_block(0, m, std::move(out));
        }
      },
      s.block());
}

TruncatedSeries treneer_projection(const TruncatedSeries& s, uint64_t ell, int64_t alpha) {
  if (!is_prime(ell)) raise(ErrorKind::bad_argument, "treneer_projection: ell must be prime");
  if (alpha < 0) raise(ErrorKind::bad_argument, "treneer_projection: alpha must be >= 0");
  int64_t ell_a = 1;
  for (int64_t i = 0; i < alpha; ++i) {
    if (ell_a > (int64_t(1) << 40)) raise(ErrorKind::bad_argument, "treneer_projection: ell^alpha too large");
    ell_a *= static_cast<int64_t>(ell);
  }
  auto ceil_div = [](int64_t a, int64_t b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); };
  int64_t out_val = ceil_div(s.val(), ell_a);
  int64_t out_trunc = s.trunc() >= 1 ? (s.trunc() - 1) / ell_a + 1 : ceil_div(s.trunc(), ell_a);
  if (out_trunc < out_val) out_trunc = out_val;
  size_t out_len = static_cast<size_t>(out_trunc - out_val);
  int64_t le = static_cast<int64_t>(ell);

  return std::visit(
      [&](const auto& v) -> TruncatedSeries {
        std::decay_t<decltype(v)> out(out_len);
        for (size_t i = 0; i < out_len; ++i) {
          int64_t n = out_val + static_cast<int64_t>(i);
          if (n % le == 0) continue;
          int64_t e = ell_a * n;
          if (e >= s.val() && e < s.trunc()) out[i] = v[static_cast<size_t>(e - s.val())];
        }
        return TruncatedSeries::from_block(out_val, s.modulus(), std::move(out));
      },
      s.block());
}

AlphaBeta alpha_beta(int64_t min_ord_div, int64_t min_ord_nondiv, uint64_t ell) {
  if (!is_prime(ell)) raise(ErrorKind::bad_argument, "alpha_beta: ell must be prime");
  auto smallest = [&](int64_t threshold) {
    // smallest t >= 0 with ell^t > threshold
    int64_t t = 0;
    int64_t pw = 1;
    while (pw <= threshold) {
      pw *= static_cast<int64_t>(ell);
      ++t;
      if (t > 62) raise(ErrorKind::bad_argument, "alpha_beta: exponent out of range");
    }
    return t;
  };
  return AlphaBeta{smallest(-4 * min_ord_div), smallest(-min_ord_nondiv)};
}

SturmBound sturm_bound(int64_t k, uint64_t N) {
  if (k < 2 || k % 2 != 0) raise(ErrorKind::bad_argument, "sturm_bound: k must be even and >= 2");
  if (N < 1) raise(ErrorKind::bad_argument, "sturm_bound: N must be >= 1");
  mpq_class q(k, 12);
  q *= static_cast<unsigned long>(N);
  for (auto [p, e] : factorize(N)) {
    q *= mpq_class(static_cast<unsigned long>(p + 1), static_cast<unsigned long>(p));
  }
  q.canonicalize();
  BigInt c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  if (!c.fits_slong_p()) raise(ErrorKind::bad_argument, "sturm_bound: out of range");
  return SturmBound{q, static_cast<int64_t>(c.get_si())};
}

AnnihilationResult annihilation_check(const TruncatedSeries& s, const HeckeContext& ctx,
                                      int64_t bound, std::optional<int64_t> sturm) {
  uint64_t lj = ctx.ell_pow();
  if (!s.exact() && s.modulus() % lj != 0)
    raise(ErrorKind::modulus_mismatch,
          "annihilation_check: series modulus is not a multiple of ell^j");
  TruncatedSeries h = hecke_t_p2(s, ctx);
  if (bound >= h.trunc())
    raise(ErrorKind::window_exceeded,
          "annihilation_check: bound " + std::to_string(bound) +
              " exceeds the certain window of T(p^2) (trunc " + std::to_string(h.trunc()) +
              "; input trunc must be at least " +
              std::to_string(bound * static_cast<int64_t>(ctx.p) * static_cast<int64_t>(ctx.p) + 1) + ")");
  AnnihilationResult res;
  res.bound = bound;
  res.sturm_ceiling = sturm;
  res.reached_sturm = sturm.has_value() && bound >= *sturm;
  res.annihilates = true;
  for (int64_t n = h.val(); n <= bound; ++n) {
    BigInt c = h.coeff(n);
    if (mpz_fdiv_ui(c.get_mpz_t(), lj) != 0) {
      res.annihilates = false;
      res.witness = n;
      break;
    }
  }
  return res;
}

}  // namespace qcong
