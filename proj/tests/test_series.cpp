#include "doctest.h"

#include "oracles.hpp"
#include "qcong/error.hpp"
#include "qcong/series.hpp"

#include <random>
#include <thread>

using namespace qcong;
using oracle::random_series;

namespace {

TruncatedSeries S(int64_t val, std::vector<BigInt> coeffs, uint64_t m = 0) {
  return TruncatedSeries::from_coeffs(val, coeffs, m);
}

}  // namespace

TEST_CASE("cell width tracks modulus squared") {
  CHECK(cell_bytes_for_modulus(2) == 1);
  CHECK(cell_bytes_for_modulus(15) == 1);
  CHECK(cell_bytes_for_modulus(16) == 2);
  CHECK(cell_bytes_for_modulus(255) == 2);
  CHECK(cell_bytes_for_modulus(256) == 4);
  CHECK(cell_bytes_for_modulus(65535) == 4);
  CHECK(cell_bytes_for_modulus(65536) == 8);
  CHECK_THROWS_AS(cell_bytes_for_modulus(1), Error);
  CHECK_THROWS_AS(cell_bytes_for_modulus(uint64_t(1) << 32), Error);
}

TEST_CASE("series_add basics") {
  // (1+q) + (1-q) = 2
  TruncatedSeries r = S(0, {1, 1}) + S(0, {1, -1});
  CHECK(r.coeff(0) == 2);
  CHECK(r.coeff(1) == 0);
  CHECK(r.val() == 0);
  CHECK(r.trunc() == 2);

  // s + zero = s when the zero window is at least as wide
  TruncatedSeries s = S(-2, {3, 0, 1, 4});
  CHECK(s + TruncatedSeries::zeros(-5, 10) == s);

  // mod 5: 4q + 3q = 2q
  TruncatedSeries t = S(1, {4}, 5) + S(1, {3}, 5);
  CHECK(t.coeff_u64(1) == 2);

  // modulus mismatch
  CHECK_THROWS_AS(S(0, {1}, 5) + S(0, {1}, 7), Error);
  CHECK_THROWS_AS(S(0, {1}, 5) + S(0, {1}), Error);
}

TEST_CASE("series_add window is the intersection of certainty") {
  TruncatedSeries a = S(-1, {1, 2, 3});  // window [-1, 2)
  TruncatedSeries b = S(0, {5, 6, 7, 8});  // window [0, 4)
  TruncatedSeries r = a + b;
  CHECK(r.val() == -1);
  CHECK(r.trunc() == 2);
  CHECK(r.coeff(-1) == 1);
  CHECK(r.coeff(0) == 7);
  CHECK(r.coeff(1) == 9);
  CHECK_THROWS_AS(r.coeff(2), Error);
}

TEST_CASE("series_mul basics and window rule") {
  // (1+q)(1-q) = 1 - q^2, visible once the inputs carry three known terms
  TruncatedSeries r = S(0, {1, 1, 0}) * S(0, {1, -1, 0});
  CHECK(r.trunc() == 3);
  CHECK(r.coeff(0) == 1);
  CHECK(r.coeff(1) == 0);
  CHECK(r.coeff(2) == -1);

  // s * 1 = s when 1 carries a window of the same length
  TruncatedSeries s = S(2, {4, 0, -3});
  CHECK(s * TruncatedSeries::one(3) == s);

  // (1-q)(1-q^2) = 1 - q - q^2 + q^3
  TruncatedSeries t = S(0, {1, -1, 0, 0}) * S(0, {1, 0, -1, 0});
  CHECK(t.coeff(0) == 1);
  CHECK(t.coeff(1) == -1);
  CHECK(t.coeff(2) == -1);
  CHECK(t.coeff(3) == 1);

  // val adds, trunc is min(a.trunc + b.val, b.trunc + a.val)
  TruncatedSeries a = S(-2, {1, 1, 1});
  TruncatedSeries b = S(3, {2, 2});
  TruncatedSeries ab = a * b;
  CHECK(ab.val() == 1);
  CHECK(ab.trunc() == 3);

  // empty result window is an error
  CHECK_THROWS_AS(S(0, {1}) * TruncatedSeries::zeros(5, 5), Error);
}

TEST_CASE("series_mul agrees with the naive convolution oracle") {
  std::mt19937 rng(42);
  for (int iter = 0; iter < 25; ++iter) {
    uint64_t m = (iter % 3 == 0) ? 0 : (iter % 3 == 1 ? 7 : 125);
    TruncatedSeries a = random_series(rng, m, 200, 0, 0, 100);
    TruncatedSeries b = random_series(rng, m, 200, 0, 0, 100);
    TruncatedSeries got = a * b;
    size_t T = static_cast<size_t>(got.trunc());
    auto want = oracle::naive_mul(oracle::series_to_vec(a, static_cast<size_t>(a.trunc())),
                                  oracle::series_to_vec(b, static_cast<size_t>(b.trunc())), T);
    for (size_t i = 0; i < T; ++i) {
      BigInt w = m ? BigInt(mpz_fdiv_ui(want[i].get_mpz_t(), m)) : want[i];
      CHECK(got.coeff(static_cast<int64_t>(i)) == w);
    }
  }
}

TEST_CASE("ring axioms on the overlapping window") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 60; ++iter) {
    uint64_t m = (iter % 3 == 0) ? 0 : (iter % 3 == 1 ? 5 : 97);
    TruncatedSeries a = random_series(rng, m);
    TruncatedSeries b = random_series(rng, m);
    TruncatedSeries c = random_series(rng, m);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("geometric_divide basics") {
  CHECK(geometric_divide(TruncatedSeries::one(6), 1) == S(0, {1, 1, 1, 1, 1, 1}));
  CHECK(geometric_divide(S(0, {1, -1, 0, 0, 0}), 1) == S(0, {1, 0, 0, 0, 0}));
  CHECK_THROWS_AS(geometric_divide(TruncatedSeries::one(4), 0), Error);
  CHECK_THROWS_AS(geometric_divide(TruncatedSeries::one(4), -2), Error);

  // iterating over n = 1..5 at trunc 6 produces the partition numbers
  TruncatedSeries p = TruncatedSeries::one(6);
  for (int64_t n = 1; n <= 5; ++n) p = geometric_divide(p, n);
  CHECK(p == S(0, {1, 1, 2, 3, 5, 7}));
}

TEST_CASE("geometric_multiply basics") {
  CHECK(geometric_multiply(TruncatedSeries::one(5), 3) == S(0, {1, 0, 0, -1, 0}));
  // mod matches the exact path reduced
  TruncatedSeries e = S(0, {1, 1, 2, 3, 5});
  CHECK(reduce_mod(geometric_multiply(e, 1), 5) == geometric_multiply(reduce_mod(e, 5), 1));
}

TEST_CASE("geometric divide and multiply are inverse passes") {
  std::mt19937 rng(11);
  for (int iter = 0; iter < 40; ++iter) {
    uint64_t m = (iter % 2) ? 13 : 0;
    TruncatedSeries s = random_series(rng, m);
    int64_t stride = 1 + static_cast<int64_t>(rng() % 8);
    CHECK(geometric_multiply(geometric_divide(s, stride), stride) == s);
    CHECK(geometric_divide(geometric_multiply(s, stride), stride) == s);
    CHECK(divide_one_plus(multiply_one_plus(s, stride), stride) == s);
    // single (1+q^m) pass equals the two-pass (1-q^{2m})/(1-q^m) composite
    CHECK(multiply_one_plus(s, stride) == geometric_divide(geometric_multiply(s, 2 * stride), stride));
  }
}

TEST_CASE("pochhammer symbols") {
  CHECK(pochhammer(1, 1, 1, 0, 4) == TruncatedSeries::one(4));
  // (q;q)_2 = 1 - q - q^2 + q^3
  TruncatedSeries p = pochhammer(1, 1, 1, 2, 6);
  CHECK(p.coeff(0) == 1);
  CHECK(p.coeff(1) == -1);
  CHECK(p.coeff(2) == -1);
  CHECK(p.coeff(3) == 1);
  CHECK(p.coeff(4) == 0);
  // (-q;q)_1 = 1 + q
  CHECK(pochhammer(-1, 1, 1, 1, 4) == S(0, {1, 1, 0, 0}));
  CHECK_THROWS_AS(pochhammer(2, 1, 1, 1, 4), Error);
}

TEST_CASE("reduce_mod") {
  // 5q^4 + 7q^5 mod 5 = 2q^5
  TruncatedSeries r = reduce_mod(S(4, {5, 7}), 5);
  CHECK(r.modulus() == 5);
  CHECK(r.coeff(4) == 0);
  CHECK(r.coeff(5) == 2);
  // idempotent
  CHECK(reduce_mod(r, 5) == r);
  // negative coefficients land in [0, m)
  CHECK(reduce_mod(S(0, {-1}), 7).coeff_u64(0) == 6);
  // refining a modulus requires divisibility
  CHECK(reduce_mod(S(0, {100, 101}, 125), 5).coeff_u64(1) == 1);
  CHECK_THROWS_AS(reduce_mod(S(0, {1}, 10), 4), Error);
}

TEST_CASE("exact computation followed by reduce_mod equals the all-mod path") {
  std::mt19937 rng(13);
  for (int iter = 0; iter < 40; ++iter) {
    uint64_t m = (iter % 2) ? 5 : 125;
    TruncatedSeries a = random_series(rng, 0);
    TruncatedSeries b = random_series(rng, 0);
    TruncatedSeries am = reduce_mod(a, m), bm = reduce_mod(b, m);
    CHECK(reduce_mod(a + b, m) == am + bm);
    CHECK(reduce_mod(a - b, m) == am - bm);
    int64_t stride = 1 + static_cast<int64_t>(rng() % 5);
    CHECK(reduce_mod(geometric_divide(a, stride), m) == geometric_divide(am, stride));
    CHECK(reduce_mod(geometric_multiply(a, stride), m) == geometric_multiply(am, stride));
    if (a.length() == b.length())
      CHECK(reduce_mod(a * b, m) == am * bm);
  }
  CHECK(reduce_mod(pochhammer(1, 1, 2, 5, 50), 7) == pochhammer(1, 1, 2, 5, 50, 7));
}

TEST_CASE("negative exponents are first-class") {
  TruncatedSeries s = TruncatedSeries::monomial(-5, 3, 2);
  CHECK(s.val() == -5);
  CHECK(s.coeff(-5) == 3);
  CHECK(s.coeff(-4) == 0);
  TruncatedSeries twice = s + s;
  CHECK(twice.coeff(-5) == 6);
  TruncatedSeries sq = s * s;
  CHECK(sq.val() == -10);
  CHECK(sq.coeff(-10) == 9);
}

TEST_CASE("series values are safe to share across threads") {
  TruncatedSeries shared = pochhammer(1, 1, 1, 20, 400, 13);
  std::vector<TruncatedSeries> results(4);
  std::vector<std::thread> pool;
  for (int w = 0; w < 4; ++w) {
    pool.emplace_back([&, w] {
      TruncatedSeries acc = shared;
      for (int i = 0; i < 10; ++i) acc = geometric_divide(acc * shared, 1 + (i % 3));
      results[static_cast<size_t>(w)] = acc;
    });
  }
  for (auto& t : pool) t.join();
  for (int w = 1; w < 4; ++w) CHECK(results[0] == results[static_cast<size_t>(w)]);
}

TEST_CASE("shift, clip and drop_below") {
  TruncatedSeries s = S(0, {1, 2, 3});
  TruncatedSeries sh = shifted(s, -4);
  CHECK(sh.val() == -4);
  CHECK(sh.coeff(-3) == 2);
  TruncatedSeries cl = clipped(s, 2);
  CHECK(cl.trunc() == 2);
  CHECK_THROWS_AS(clipped(s, 5), Error);
  TruncatedSeries dropped = drop_below(S(0, {0, 0, 7}), 2);
  CHECK(dropped.val() == 2);
  CHECK(dropped.coeff(2) == 7);
  CHECK_THROWS_AS(drop_below(S(0, {1, 0, 7}), 2), Error);
}
