#include "doctest.h"

#include "oracles.hpp"
#include "qcong/catalog.hpp"
#include "qcong/error.hpp"
#include "qcong/ntheory.hpp"
#include "qcong/twist.hpp"

#include <random>

using namespace qcong;
using oracle::random_series;

TEST_CASE("jacobi symbol basics") {
  CHECK(jacobi_symbol(1, 3) == 1);
  CHECK(jacobi_symbol(2, 7) == 1);  // squares mod 7 are {1, 2, 4}
  CHECK(jacobi_symbol(0, 5) == 0);
  CHECK(jacobi_symbol(-1, 5) == 1);
  CHECK(jacobi_symbol(-1, 3) == -1);
  CHECK_THROWS_AS(jacobi_symbol(1, 4), Error);
  CHECK_THROWS_AS(jacobi_symbol(1, 0), Error);
}

TEST_CASE("jacobi symbol matches the Euler-criterion oracle on primes below 100") {
  for (uint64_t p = 3; p < 100; p = next_prime(p)) {
    for (int64_t a = 0; a < static_cast<int64_t>(p); ++a) {
      CHECK(jacobi_symbol(a, p) == oracle::euler_criterion(a, p));
    }
  }
}

TEST_CASE("jacobi symbol is multiplicative and periodic") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int64_t> ad(-1000, 1000);
  std::uniform_int_distribution<int64_t> nd(0, 499);
  for (int iter = 0; iter < 100000; ++iter) {
    int64_t a = ad(rng), b = ad(rng);
    uint64_t n = static_cast<uint64_t>(2 * nd(rng) + 1);
    CHECK(jacobi_symbol(a * b, n) == jacobi_symbol(a, n) * jacobi_symbol(b, n));
    CHECK(jacobi_symbol(a + static_cast<int64_t>(n), n) == jacobi_symbol(a, n));
  }
}

TEST_CASE("twist_coefficients applies (n/Q)") {
  // Q = 3 on 1 + q + q^2 + q^3 -> q - q^2
  TruncatedSeries s = TruncatedSeries::from_coeffs(0, {1, 1, 1, 1});
  TruncatedSeries t = twist_coefficients(s, 3);
  CHECK(t.coeff(0) == 0);
  CHECK(t.coeff(1) == 1);
  CHECK(t.coeff(2) == -1);
  CHECK(t.coeff(3) == 0);

  // modular: -1 acts as m - 1
  TruncatedSeries sm = TruncatedSeries::from_coeffs(0, {1, 1, 1, 1}, 5);
  TruncatedSeries tm = twist_coefficients(sm, 3);
  CHECK(tm.coeff_u64(2) == 4);

  TruncatedSeries z = TruncatedSeries::zeros(0, 10, 7);
  CHECK(twist_coefficients(z, 3).is_zero());
}

TEST_CASE("twisting twice zeroes exactly the multiples of Q") {
  std::mt19937 rng(17);
  for (int iter = 0; iter < 30; ++iter) {
    uint64_t m = (iter % 2) ? 0 : 11;
    uint64_t Q = (iter % 3 == 0) ? 3 : (iter % 3 == 1 ? 5 : 7);
    TruncatedSeries s = random_series(rng, m);
    TruncatedSeries tt = twist_coefficients(twist_coefficients(s, Q), Q);
    for (int64_t e = s.val(); e < s.trunc(); ++e) {
      int64_t r = ((e % static_cast<int64_t>(Q)) + static_cast<int64_t>(Q)) % static_cast<int64_t>(Q);
      if (r == 0) CHECK(tt.coeff(e) == 0);
      else CHECK(tt.coeff(e) == s.coeff(e));
    }
  }
}

TEST_CASE("hat filter keeps exactly the (-n/Q) = -1 exponents") {
  std::mt19937 rng(19);
  for (uint64_t Q : {3ull, 5ull, 7ull, 11ull}) {
    TruncatedSeries s = random_series(rng, 0, 60, -20, 0, 20);
    TruncatedSeries h = hat_filter(s, Q);
    for (int64_t e = s.val(); e < s.trunc(); ++e) {
      if (jacobi_symbol(-e, Q) == -1) CHECK(h.coeff(e) == s.coeff(e));
      else CHECK(h.coeff(e) == 0);
      if (e % static_cast<int64_t>(Q) == 0) CHECK(h.coeff(e) == 0);
    }
    // Q = 3 keeps exactly n = 1 mod 3
    if (Q == 3) {
      for (int64_t e = s.val(); e < s.trunc(); ++e) {
        bool kept = ((e % 3) + 3) % 3 == 1;
        CHECK((h.coeff(e) != 0) == (kept && s.coeff(e) != 0));
      }
    }
  }
}

TEST_CASE("hat filter is idempotent") {
  std::mt19937 rng(29);
  for (int iter = 0; iter < 20; ++iter) {
    TruncatedSeries s = random_series(rng, (iter % 2) ? 9 : 0);
    TruncatedSeries h = hat_filter(s, 5);
    CHECK(hat_filter(h, 5) == h);
  }
}

TEST_CASE("hat filter direct path equals the composite double-twist path") {
  std::mt19937 rng(31);
  for (int iter = 0; iter < 50; ++iter) {
    uint64_t odd_mods[] = {0, 3, 5, 7, 9, 15, 125};
    uint64_t m = odd_mods[iter % 7];
    for (uint64_t Q : {3ull, 5ull, 7ull, 11ull}) {
      TruncatedSeries s = random_series(rng, m, 80, -15, 15, 40);
      CHECK(hat_filter(s, Q) == hat_filter_composite(s, Q));
    }
  }
  // even modulus: only the direct path exists
  TruncatedSeries even = TruncatedSeries::from_coeffs(0, {1, 2, 3}, 8);
  CHECK_THROWS_AS(hat_filter_composite(even, 3), Error);
  CHECK(hat_filter(even, 3).coeff_u64(1) == 2);
  CHECK(hat_filter(even, 3).coeff_u64(0) == 0);
}

TEST_CASE("hat filter annihilates the nonholomorphic support") {
  Catalog c = load_catalog(std::string(QCONG_SOURCE_ROOT) + "/data/catalog.qcat");
  for (const auto& spec : c.entries) {
    uint64_t Q = select_twist_prime(spec.shadow_deltas, {});
    for (int64_t d : spec.shadow_deltas) {
      CHECK(jacobi_symbol(d, Q) == 1);
      for (int64_t m = 1; m <= 25; ++m) {
        TruncatedSeries mono = TruncatedSeries::monomial(-d * m * m, 1, 1);
        CHECK(hat_filter(mono, Q).is_zero());
      }
    }
  }
}

TEST_CASE("select_twist_prime") {
  CHECK(select_twist_prime({1}, {}) == 3);
  CHECK(select_twist_prime({2}, {}) == 7);
  CHECK(select_twist_prime({1}, {3, 5}) == 7);
  CHECK(select_twist_prime({3}, {}) == 11);
  CHECK_THROWS_AS(select_twist_prime({2}, {}, 3, 5), Error);
  CHECK_THROWS_AS(select_twist_prime({}, {}), Error);
}

TEST_CASE("twist params carry the level transition") {
  TwistParams tp = make_twist_params(3, 4);
  CHECK(tp.Q == 3);
  CHECK(tp.level_in == 4);
  CHECK(tp.level_out == 36);
  CHECK_THROWS_AS(make_twist_params(2, 4), Error);
  CHECK_THROWS_AS(make_twist_params(9, 4), Error);
}

TEST_CASE("twisted level") {
  CHECK(twisted_level(4, 3) == 36);
  CHECK(twisted_level(7, 1) == 7);
  CHECK(twisted_level(12, 2) == 24);
  CHECK(level_after_double_twist(4, 3) == 108);
  CHECK(level_after_double_twist(8, 5) == 1000);
  CHECK(level_after_double_twist(20, 7) == 6860);
  // applying the level lemma twice lands on 4N Q^3 when gcd(4N, Q) = 1
  for (uint64_t fourN : {4ull, 8ull, 20ull}) {
    for (uint64_t Q : {3ull, 5ull, 7ull}) {
      if (fourN % Q == 0) continue;
      CHECK(twisted_level(twisted_level(fourN, Q), Q) == level_after_double_twist(fourN, Q));
    }
  }
}

TEST_CASE("twist preserves the zero set") {
  std::mt19937 rng(37);
  TruncatedSeries s = random_series(rng, 13);
  TruncatedSeries t = twist_coefficients(s, 7);
  for (int64_t e = s.val(); e < s.trunc(); ++e) {
    if (s.coeff(e) == 0) CHECK(t.coeff(e) == 0);
    if (e % 7 == 0) CHECK(t.coeff(e) == 0);
  }
}
