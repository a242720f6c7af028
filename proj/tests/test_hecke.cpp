#include "doctest.h"

#include "oracles.hpp"
#include "qcong/error.hpp"
#include "qcong/hecke.hpp"
#include "qcong/ntheory.hpp"

#include <random>

using namespace qcong;
using oracle::random_series;

namespace {

HeckeContext ctx_for(uint64_t p, int64_t lambda, int chi, uint64_t ell, int64_t j, uint64_t level = 1,
                     bool relax = false) {
  HeckeContext c;
  c.p = p;
  c.lambda = lambda;
  c.chi_p = chi;
  c.ell = ell;
  c.j = j;
  c.level = level;
  c.require_ell_coprime = !relax;
  return c;
}

TruncatedSeries nonneg_series(std::mt19937& rng, uint64_t m, int64_t T) {
  std::uniform_int_distribution<int64_t> cd(0, static_cast<int64_t>(m) - 1);
  std::vector<BigInt> coeffs(static_cast<size_t>(T));
  for (auto& c : coeffs) c = cd(rng);
  return TruncatedSeries::from_coeffs(0, coeffs, m);
}

}  // namespace

TEST_CASE("T(p^2) on the monomial q") {
  // lambda = 1, p = 3, chi = 1, exact arithmetic: output is -q + 3 q^9
  TruncatedSeries s = TruncatedSeries::monomial(1, 1, 100);
  TruncatedSeries h = hecke_t_p2(s, ctx_for(3, 1, 1, 5, 1));
  CHECK(h.trunc() == 12);  // floor(99/9) + 1
  CHECK(h.coeff(1) == -1);
  CHECK(h.coeff(9) == 3);
  for (int64_t n = 0; n < h.trunc(); ++n)
    if (n != 1 && n != 9) CHECK(h.coeff(n) == 0);
}

TEST_CASE("T(p^2) of zero is zero") {
  TruncatedSeries z = TruncatedSeries::zeros(0, 500, 5);
  CHECK(hecke_t_p2(z, ctx_for(3, 1, 1, 5, 1)).is_zero());
}

TEST_CASE("T(p^2) context validation") {
  TruncatedSeries s = TruncatedSeries::one(100);
  CHECK_THROWS_AS(hecke_t_p2(s, ctx_for(3, 0, 1, 5, 1)), Error);      // lambda 0 rejected
  CHECK_THROWS_AS(hecke_t_p2(s, ctx_for(4, 1, 1, 5, 1)), Error);      // p not prime
  CHECK_THROWS_AS(hecke_t_p2(s, ctx_for(5, 1, 1, 5, 1)), Error);      // p = ell
  CHECK_THROWS_AS(hecke_t_p2(s, ctx_for(3, 1, 1, 5, 1, 3)), Error);   // p | level
  CHECK_THROWS_AS(hecke_t_p2(shifted(s, -2), ctx_for(3, 1, 1, 5, 1)), Error);  // val < 0
  // relaxed flag admits p = ell for bare operator use
  TruncatedSeries sm = reduce_mod(s, 125);
  CHECK_NOTHROW(hecke_t_p2(sm, ctx_for(5, 1, 1, 5, 3, 1, true)));
}

TEST_CASE("T(p^2) is linear") {
  std::mt19937 rng(41);
  for (int iter = 0; iter < 10; ++iter) {
    TruncatedSeries a = nonneg_series(rng, 125, 2000);
    TruncatedSeries b = nonneg_series(rng, 125, 2000);
    HeckeContext c = ctx_for(3, 2, -1, 5, 3);
    CHECK(hecke_t_p2(a + b, c) == hecke_t_p2(a, c) + hecke_t_p2(b, c));
  }
}

TEST_CASE("T(p^2) operators commute") {
  std::mt19937 rng(43);
  for (int64_t lambda : {1, 2}) {
    for (auto [p1, p2] : std::vector<std::pair<uint64_t, uint64_t>>{{3, 5}, {5, 7}}) {
      TruncatedSeries s = nonneg_series(rng, 7, 10000);
      HeckeContext c1 = ctx_for(p1, lambda, 1, 11, 1);
      HeckeContext c2 = ctx_for(p2, lambda, -1, 11, 1);
      CHECK(hecke_t_p2(hecke_t_p2(s, c1), c2) == hecke_t_p2(hecke_t_p2(s, c2), c1));
    }
  }
}

TEST_CASE("T(p^2) exact path reduced equals the mod path") {
  std::mt19937 rng(47);
  for (int iter = 0; iter < 10; ++iter) {
    std::vector<BigInt> coeffs(3000);
    std::uniform_int_distribution<int64_t> cd(-50, 50);
    for (auto& c : coeffs) c = cd(rng);
    TruncatedSeries exact = TruncatedSeries::from_coeffs(0, coeffs);
    HeckeContext c = ctx_for(7, 12, iter % 2 ? 1 : -1, 5, 2);
    CHECK(reduce_mod(hecke_t_p2(exact, c), 25) == hecke_t_p2(reduce_mod(exact, 25), c));
  }
}

TEST_CASE("projection keeps a(ell^alpha n) away from multiples of ell") {
  // alpha = 0, ell = 5 on 1+q+2q^2+3q^3+5q^4+7q^5 drops n=0 and n=5
  TruncatedSeries s = TruncatedSeries::from_coeffs(0, {1, 1, 2, 3, 5, 7});
  TruncatedSeries t = treneer_projection(s, 5, 0);
  CHECK(t.trunc() == 6);
  CHECK(t.coeff(0) == 0);
  CHECK(t.coeff(1) == 1);
  CHECK(t.coeff(2) == 2);
  CHECK(t.coeff(3) == 3);
  CHECK(t.coeff(4) == 5);
  CHECK(t.coeff(5) == 0);

  CHECK(treneer_projection(TruncatedSeries::zeros(0, 50, 5), 5, 1).is_zero());

  // idempotent at alpha = 0
  CHECK(treneer_projection(t, 5, 0) == t);

  // window: trunc = floor((T-1)/ell^alpha) + 1
  TruncatedSeries big = TruncatedSeries::zeros(0, 101, 5);
  CHECK(treneer_projection(big, 5, 2).trunc() == 5);

  // supported away from multiples of ell
  std::mt19937 rng(53);
  TruncatedSeries r = random_series(rng, 0, 60, 0, 4, 20);
  TruncatedSeries pr = treneer_projection(r, 3, 1);
  for (int64_t n = pr.val(); n < pr.trunc(); ++n)
    if (n % 3 == 0) CHECK(pr.coeff(n) == 0);
}

TEST_CASE("alpha and beta are the minimal exponents") {
  CHECK(alpha_beta(0, 0, 5).alpha == 0);
  CHECK(alpha_beta(-6, 0, 5).alpha == 2);  // need 5^a > 24
  CHECK(alpha_beta(0, -1, 3).beta == 1);   // need 3^b > 1
  for (int64_t mo : {-1, -3, -10, -100, 0, 5}) {
    for (uint64_t ell : {3ull, 5ull, 7ull}) {
      AlphaBeta ab = alpha_beta(mo, mo, ell);
      auto pow = [&](int64_t e) {
        int64_t r = 1;
        while (e-- > 0) r *= static_cast<int64_t>(ell);
        return r;
      };
      CHECK(-pow(ab.alpha) < 4 * mo);
      if (ab.alpha > 0) CHECK(-pow(ab.alpha - 1) >= 4 * mo);
      CHECK(-pow(ab.beta) < mo);
      if (ab.beta > 0) CHECK(-pow(ab.beta - 1) >= mo);
    }
  }
}

TEST_CASE("sturm bound formula") {
  CHECK(sturm_bound(12, 1).ceiling == 1);
  CHECK(sturm_bound(12, 1).value == mpq_class(1));
  CHECK(sturm_bound(24, 2).ceiling == 6);  // (24/12) * 2 * (3/2)
  CHECK_THROWS_AS(sturm_bound(11, 1), Error);
  // independent product evaluation over the factored level
  std::mt19937 rng(59);
  for (int iter = 0; iter < 50; ++iter) {
    int64_t k = 2 * (2 + static_cast<int64_t>(rng() % 40));
    uint64_t N = 1 + rng() % 400;
    mpq_class expect(k, 12);
    expect *= static_cast<unsigned long>(N);
    for (auto [p, e] : factorize(N)) expect *= mpq_class(static_cast<unsigned long>(p + 1), static_cast<unsigned long>(p));
    expect.canonicalize();
    CHECK(sturm_bound(k, N).value == expect);
  }
}

TEST_CASE("annihilation check") {
  // the zero series is annihilated
  TruncatedSeries z = TruncatedSeries::zeros(0, 1000, 5);
  AnnihilationResult r = annihilation_check(z, ctx_for(3, 1, 1, 5, 1), 50);
  CHECK(r.annihilates);
  CHECK(!r.witness);

  // q with lambda=1, p=3, ell^j=5 fails at n=1 (coefficient -1)
  TruncatedSeries s = reduce_mod(TruncatedSeries::monomial(1, 1, 1000), 5);
  AnnihilationResult f = annihilation_check(s, ctx_for(3, 1, 1, 5, 1), 50);
  CHECK(!f.annihilates);
  CHECK(f.witness == 1);

  // coefficients divisible by ell^j pass
  TruncatedSeries d = reduce_mod(TruncatedSeries::from_coeffs(0, {5, 10, 15, 0, 5}), 5);
  CHECK(annihilation_check(d, ctx_for(3, 1, 1, 5, 1), 0).annihilates);

  // bound beyond the certain window errors
  CHECK_THROWS_AS(annihilation_check(z, ctx_for(3, 1, 1, 5, 1), 200), Error);

  // sturm bookkeeping
  AnnihilationResult s1 = annihilation_check(z, ctx_for(3, 1, 1, 5, 1), 50, 40);
  CHECK(s1.reached_sturm);
  AnnihilationResult s2 = annihilation_check(z, ctx_for(3, 1, 1, 5, 1), 50, 80);
  CHECK(!s2.reached_sturm);
}
