#include "doctest.h"

#include "oracles.hpp"
#include "qcong/catalog.hpp"
#include "qcong/congruence.hpp"
#include "qcong/error.hpp"
#include "qcong/ntheory.hpp"
#include "qcong/twist.hpp"

#include <random>

using namespace qcong;

namespace {

const Catalog& cat() {
  static Catalog c = load_catalog(std::string(QCONG_SOURCE_ROOT) + "/data/catalog.qcat");
  return c;
}

}  // namespace

TEST_CASE("verify_progression on the partition congruence mod 5") {
  TruncatedSeries p = partition_series(5 * 1000 + 5, 5);
  CongruenceCertificate c = verify_progression(p, "partition", 5, 4, 5, 1000);
  CHECK(c.status == CertStatus::verified_to_horizon);
  CHECK(!c.counterexample_n);

  // p(5n+1) fails immediately: p(1) = 1
  CongruenceCertificate f = verify_progression(p, "partition", 5, 1, 5, 10);
  CHECK(f.status == CertStatus::counterexample);
  CHECK(f.counterexample_n == 0);
  // re-testing the recorded index reproduces the failure
  CHECK(p.coeff(5 * *f.counterexample_n + 1) % 5 != 0);
}

TEST_CASE("verify_progression window handling") {
  TruncatedSeries p = partition_series(100, 5);
  CHECK_THROWS_AS(verify_progression(p, "partition", 5, 4, 5, 1000), Error);  // reported, not clipped
  CHECK_THROWS_AS(verify_progression(p, "partition", 0, 4, 5, 10), Error);
  TruncatedSeries shiftedp = shifted(p, 3);
  CHECK_THROWS_AS(verify_progression(shiftedp, "partition", 5, 1, 5, 2), Error);  // B below val
}

TEST_CASE("verify_progression on the psi congruence, small horizon") {
  int64_t A = 73205;  // 11^4 * 5
  int64_t horizon = 2;
  TruncatedSeries psi = expand_series(cat().require("psi"), A * horizon + 722, 5);
  CongruenceCertificate c = verify_progression(psi, "psi", A, 721, 5, horizon);
  CHECK(c.status == CertStatus::verified_to_horizon);
}

TEST_CASE("certificates serialize deterministically") {
  TruncatedSeries p = partition_series(200, 5);
  CongruenceCertificate c = verify_progression(p, "partition", 5, 4, 5, 30);
  c.provenance.emplace_back("Q", "3");
  Document d1 = certificate_document(c, "fnv1a:1");
  Document d2 = certificate_document(c, "fnv1a:1");
  CHECK(d1.serialize() == d2.serialize());
  CHECK(d1.serialize().find("VERIFIED_TO_HORIZON") != std::string::npos);
  CHECK(d1.serialize().find("provenance.Q: 3") != std::string::npos);
}

TEST_CASE("scan_progressions finds exactly the Ramanujan residue mod 5") {
  TruncatedSeries p = partition_series(5 * 1000 + 5, 5);
  auto hits = scan_progressions(p, "partition", 5, {5}, 1000, 2);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].A == 5);
  CHECK(hits[0].B == 4);
}

TEST_CASE("scan_progressions mod 7 includes (7,5)") {
  TruncatedSeries p = partition_series(7 * 300 + 7, 7);
  auto hits = scan_progressions(p, "partition", 7, {7}, 300, 2);
  bool found = false;
  for (auto& h : hits) found |= (h.A == 7 && h.B == 5);
  CHECK(found);
}

TEST_CASE("scan hits only grow when the horizon shrinks") {
  TruncatedSeries p = partition_series(11 * 120 + 12, 11);
  auto long_hits = scan_progressions(p, "partition", 11, {11}, 100, 1);
  auto short_hits = scan_progressions(p, "partition", 11, {11}, 10, 1);
  for (auto& h : long_hits) {
    bool present = false;
    for (auto& s : short_hits) present |= (s.A == h.A && s.B == h.B);
    CHECK(present);
  }
}

TEST_CASE("scanning the zero series verifies every progression") {
  TruncatedSeries z = TruncatedSeries::zeros(0, 100, 5);
  auto hits = scan_progressions(z, "zero", 5, {3, 4}, 20, 2);
  CHECK(hits.size() == 7);
}

TEST_CASE("scan is deterministic across thread counts") {
  TruncatedSeries p = partition_series(4000, 5);
  auto h1 = scan_progressions(p, "partition", 5, {5, 7}, 300, 1);
  auto h4 = scan_progressions(p, "partition", 5, {5, 7}, 300, 4);
  REQUIRE(h1.size() == h4.size());
  for (size_t i = 0; i < h1.size(); ++i) {
    CHECK(h1[i].A == h4[i].A);
    CHECK(h1[i].B == h4[i].B);
  }
}

TEST_CASE("assemble_congruence satisfies its defining conditions") {
  std::mt19937 rng(61);
  for (int iter = 0; iter < 40; ++iter) {
    uint64_t ps[] = {7, 11, 13, 23};
    uint64_t ells[] = {5, 7, 13};
    uint64_t qs[] = {3, 11, 17};
    uint64_t p = ps[rng() % 4], ell = ells[rng() % 3], Q = qs[rng() % 3];
    if (p == ell || p == Q) continue;
    int64_t m = static_cast<int64_t>(rng() % 3);
    const MockThetaSpec& spec = cat().require("psi");
    AssembledCongruence ac = assemble_congruence(p, ell, m, Q, spec);
    CHECK(std::gcd(static_cast<uint64_t>(ac.a), p * ell) == 1);
    // re-evaluate the defining symbol directly
    mpz_class lead = ac.b_offset;  // p^3 ell^m A
    int64_t residue = static_cast<int64_t>(mpz_fdiv_ui(lead.get_mpz_t(), Q));
    CHECK(jacobi_symbol(-residue, Q) == -1);
    // A_mod = p^4 ell^{m+1} Q and Q | A_mod, so every progression member
    // keeps the same symbol class
    mpz_class amod_expect = mpz_class(static_cast<unsigned long>(p));
    amod_expect = amod_expect * amod_expect * amod_expect * amod_expect;
    for (int64_t i = 0; i < m + 1; ++i) amod_expect *= ell;
    amod_expect *= Q;
    CHECK(ac.a_mod == amod_expect);
    CHECK(mpz_divisible_ui_p(ac.a_mod.get_mpz_t(), Q));
    if (ac.b_prime_integral) {
      mpz_class back = mpz_class(ac.b_prime.get_num()) * spec.delta + spec.tau;
      CHECK(back == ac.b_offset);
    }
  }
}

TEST_CASE("assemble_congruence, explicit small case") {
  // p=23, ell=5, m=0, Q=3, delta=1, tau=0
  MockThetaSpec spec;
  spec.name = "plain";
  spec.delta = 1;
  spec.tau = 0;
  spec.level = 4;
  spec.shadow_deltas = {1};
  AssembledCongruence ac = assemble_congruence(23, 5, 0, 3, spec);
  CHECK(std::gcd(static_cast<uint64_t>(ac.a), uint64_t(115)) == 1);
  int64_t residue = static_cast<int64_t>(mpz_fdiv_ui(ac.b_offset.get_mpz_t(), 3));
  CHECK(jacobi_symbol(-residue, 3) == -1);
  // smallest such A by direct search
  int64_t expect_a = 0;
  for (int64_t A = 1; A < 100; ++A) {
    if (A % 23 == 0 || A % 5 == 0) continue;
    if (jacobi_symbol(-static_cast<int64_t>(23ull * 23 * 23 % 3) * A, 3) == -1) {
      expect_a = A;
      break;
    }
  }
  CHECK(ac.a == expect_a);
  CHECK(ac.b_prime == mpq_class(ac.b_offset));
}

TEST_CASE("assemble_congruence recovers the published psi progression for p = 11, Q = ell = 5") {
  const MockThetaSpec& psi = cat().require("psi");
  AssembledCongruence ac = assemble_congruence(11, 5, 0, 5, psi);
  CHECK(ac.q_equals_ell);
  CHECK(ac.a == 13);
  CHECK(ac.a_mod == 73205);    // 11^4 * 5
  CHECK(ac.b_offset == 17303); // 11^3 * 13
  CHECK(ac.b_prime_integral);
  CHECK(ac.b_prime == 721);    // (17303 + 1)/24
}

TEST_CASE("assemble_congruence rejects bad inputs") {
  const MockThetaSpec& psi = cat().require("psi");
  CHECK_THROWS_AS(assemble_congruence(5, 5, 0, 3, psi), Error);   // p = ell
  CHECK_THROWS_AS(assemble_congruence(11, 5, 1, 5, psi), Error);  // Q = ell needs m = 0
  CHECK_THROWS_AS(assemble_congruence(12, 5, 0, 3, psi), Error);  // p not prime
}

TEST_CASE("chi rules produce the configured character values") {
  ChiRule fixed;
  fixed.kind = ChiRule::Kind::fixed;
  fixed.fixed_value = -1;
  CHECK(fixed.values_for(7) == std::vector<int>{-1});

  ChiRule kron;
  kron.kind = ChiRule::Kind::kronecker;
  kron.D = 12;
  CHECK(kron.values_for(7) == std::vector<int>{-1});   // (12/7) = (5/7) = -1
  CHECK(kron.values_for(11) == std::vector<int>{1});   // (12/11) = (1/11) = 1

  ChiRule autom;
  autom.kind = ChiRule::Kind::automatic;
  CHECK(autom.values_for(7) == (std::vector<int>{1, -1}));
}

TEST_CASE("hunt accepts the zero series at the first candidate") {
  TruncatedSeries z = TruncatedSeries::zeros(0, 10000, 5);
  HuntOptions opt;
  opt.ell = 5;
  opt.j = 1;
  opt.lambda = 12;
  opt.chi.kind = ChiRule::Kind::fixed;
  opt.chi.fixed_value = 1;
  opt.hecke_level = 4;
  opt.restrict_class = false;
  opt.p_max = 20;
  opt.bound = 50;
  HuntResult r = hunt_annihilating_prime(z, opt);
  REQUIRE(r.hit.has_value());
  CHECK(r.hit->p == 3);
  CHECK(r.attempts.empty());
}

TEST_CASE("hunt records failures and respects the window") {
  // q survives T(p^2) for every small p, so the hunt comes back empty
  TruncatedSeries s = reduce_mod(TruncatedSeries::monomial(1, 1, 20000), 5);
  HuntOptions opt;
  opt.ell = 5;
  opt.j = 1;
  opt.lambda = 1;
  opt.chi.kind = ChiRule::Kind::automatic;
  opt.hecke_level = 4;
  opt.restrict_class = false;
  opt.p_max = 12;
  opt.bound = 80;
  HuntResult r = hunt_annihilating_prime(s, opt);
  CHECK(!r.hit.has_value());
  CHECK(r.attempts.size() >= 4);  // p in {3, 7, 11} x chi values, minus window losses
  for (auto& a : r.attempts) CHECK(a.witness >= 0);

  // too small a window for every candidate
  TruncatedSeries tiny = TruncatedSeries::zeros(0, 10, 5);
  HuntOptions small = opt;
  small.bound = 500;
  CHECK_THROWS_AS(hunt_annihilating_prime(tiny, small), Error);

  // restricted class with no modulus is a config error
  HuntOptions bad = opt;
  bad.restrict_class = true;
  bad.class_modulus = 0;
  CHECK_THROWS_AS(hunt_annihilating_prime(s, bad), Error);
}
