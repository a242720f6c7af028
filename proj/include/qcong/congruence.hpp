#pragma once

#include "qcong/cache.hpp"
#include "qcong/catalog.hpp"
#include "qcong/hecke.hpp"
#include "qcong/report.hpp"
#include "qcong/series.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qcong {

enum class CertStatus { verified_to_horizon, counterexample, sturm_certified };

std::string to_string(CertStatus s);

// Machine-checkable record of a progression check c(A n + B) = 0 mod ell^j.
struct CongruenceCertificate {
  std::string series_id;
  mpz_class A;
  mpz_class B;
  uint64_t modulus = 0;
  int64_t horizon = 0;
  CertStatus status = CertStatus::verified_to_horizon;
  std::optional<int64_t> counterexample_n;
  std::vector<std::pair<std::string, std::string>> provenance;
};

Document certificate_document(const CongruenceCertificate& cert, const std::string& cache_checksum);

// Check coefficient(A n + B) = 0 mod m for n = 0..horizon; the first failure
// is recorded. Errors (never silently clips) when the progression leaves the
// certain window.
CongruenceCertificate verify_progression(const TruncatedSeries& s, const std::string& series_id,
                                         const mpz_class& A, const mpz_class& B, uint64_t m,
                                         int64_t horizon);

// Same check streaming the sparse progression straight from a coefficient
// cache, without loading the block.
CongruenceCertificate verify_progression(CacheReader& reader, const std::string& series_id,
                                         const mpz_class& A, const mpz_class& B, uint64_t m,
                                         int64_t horizon);

// For each A and each residue 0 <= B < A, run verify_progression and keep
// the verified hits; deterministic order (A ascending, then B ascending).
std::vector<CongruenceCertificate> scan_progressions(const TruncatedSeries& s,
                                                     const std::string& series_id, uint64_t m,
                                                     const std::vector<int64_t>& A_set,
                                                     int64_t horizon, int threads = 1);

// Result of assembling the progression data from pipeline parameters
// (p, ell, m, Q) and the reindexing (delta, tau).
struct AssembledCongruence {
  int64_t a = 0;            // the auxiliary offset multiplier A
  mpz_class a_mod;          // progression modulus: p^4 ell^{m+1} Q, or p^4 ell when Q = ell
  mpz_class b_offset;       // B = p^3 ell^m A
  mpq_class b_prime;        // B' = (B - tau)/delta
  bool b_prime_integral = false;
  bool q_equals_ell = false;
};

// Finds the smallest positive A with gcd(A, p ell) = 1 and
// (-p^3 ell^m A / Q) = -1; when gcd(delta, p Q ell) = 1 it additionally
// requires A = tau ell^{-m} p^{-3} (mod delta) so that B' is integral.
// Search is capped at 4 Q delta ell; exhaustion is an error.
AssembledCongruence assemble_congruence(uint64_t p, uint64_t ell, int64_t m, uint64_t Q,
                                        const MockThetaSpec& spec);

// How chi(p) is chosen while hunting: a fixed value, a Kronecker symbol
// (D/p), or automatic (try +1 then -1).
struct ChiRule {
  enum class Kind { fixed, kronecker, automatic } kind = Kind::automatic;
  int fixed_value = 1;
  int64_t D = 12;

  std::vector<int> values_for(uint64_t p) const;
  std::string describe() const;
};

struct HuntAttempt {
  uint64_t p = 0;
  int chi = 0;
  int64_t witness = 0;
};

struct HuntHit {
  uint64_t p = 0;
  int chi = 0;
  AnnihilationResult annihilation;
};

struct HuntResult {
  std::optional<HuntHit> hit;
  std::vector<HuntAttempt> attempts;       // failures, in candidate order
  std::optional<int64_t> min_trunc_needed; // set when the window blocked every candidate
};

struct HuntOptions {
  uint64_t ell = 5;
  int64_t j = 1;
  int64_t alpha = 0;         // recorded in provenance; the input is already projected
  int64_t lambda = 12;
  ChiRule chi;
  uint64_t hecke_level = 4;  // the 4N of the ambient space T(p^2) acts on
  uint64_t class_modulus = 0;  // p = -1 mod this when restrict_class (0 = derive nothing)
  bool restrict_class = true;
  uint64_t p_max = 1000;
  int64_t bound = 100;       // annihilation horizon
  std::optional<int64_t> sturm;
};

// Iterate candidate primes in ascending order (restricted to the residue
// class -1 mod class_modulus by default) and return the first p whose T(p^2)
// annihilates the projected series mod ell^j up to `bound`.
HuntResult hunt_annihilating_prime(const TruncatedSeries& projected, const HuntOptions& opt);

}
