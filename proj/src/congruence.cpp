#include "qcong/congruence.hpp"

#include "qcong/error.hpp"
#include "qcong/ntheory.hpp"
#include "qcong/twist.hpp"
#include "qcong/version.hpp"

#include <algorithm>
#include <thread>

namespace qcong {

std::string to_string(CertStatus s) {
  switch (s) {
    case CertStatus::verified_to_horizon: return "VERIFIED_TO_HORIZON";
    case CertStatus::counterexample: return "COUNTEREXAMPLE";
    case CertStatus::sturm_certified: return "STURM_CERTIFIED";
  }
  return "?";
}

Document certificate_document(const CongruenceCertificate& cert, const std::string& cache_checksum) {
  Document doc("congruence-certificate");
  doc.add("series_id", cert.series_id);
  doc.add("A", cert.A);
  doc.add("B", cert.B);
  doc.add("modulus", cert.modulus);
  doc.add("horizon", cert.horizon);
  doc.add("status", to_string(cert.status));
  doc.add("counterexample_n",
          cert.counterexample_n ? std::to_string(*cert.counterexample_n) : std::string("-"));
  for (const auto& [k, v] : cert.provenance) doc.add("provenance." + k, v);
  doc.add("toolkit_version", std::string(toolkit_version));
  doc.add("cache_checksum", cache_checksum);
  return doc;
}

namespace {

template <class CoeffAt>
CongruenceCertificate verify_impl(int64_t val, int64_t trunc, uint64_t series_mod, bool exact,
                                  const std::string& series_id, const mpz_class& A,
                                  const mpz_class& B, uint64_t m, int64_t horizon,
                                  CoeffAt&& coeff_at) {
  if (A < 1) raise(ErrorKind::bad_argument, "verify_progression: A must be positive");
  if (horizon < 0) raise(ErrorKind::bad_argument, "verify_progression: horizon must be >= 0");
  if (m < 2) raise(ErrorKind::bad_argument, "verify_progression: modulus must be >= 2");
  if (!exact && series_mod % m != 0)
    raise(ErrorKind::modulus_mismatch,
          "verify_progression: series modulus is not a multiple of the congruence modulus");
  if (B < val)
    raise(ErrorKind::bad_argument, "verify_progression: offset B lies below the series window");
  mpz_class top = A * horizon + B;
  if (top >= trunc)
    raise(ErrorKind::window_exceeded,
          "verify_progression: progression reaches exponent " + top.get_str() +
              " beyond the certain window (trunc " + std::to_string(trunc) + ")");
  // top < trunc fits int64, hence so does every index along the progression
  int64_t a = horizon > 0 ? static_cast<int64_t>(mpz_get_si(A.get_mpz_t())) : 0;
  int64_t b = static_cast<int64_t>(mpz_get_si(B.get_mpz_t()));

  CongruenceCertificate cert;
  cert.series_id = series_id;
  cert.A = A;
  cert.B = B;
  cert.modulus = m;
  cert.horizon = horizon;
  cert.status = CertStatus::verified_to_horizon;
  for (int64_t n = 0; n <= horizon; ++n) {
    BigInt c = coeff_at(a * n + b);
    if (mpz_fdiv_ui(c.get_mpz_t(), m) != 0) {
      cert.status = CertStatus::counterexample;
      cert.counterexample_n = n;
      break;
    }
  }
  return cert;
}

}  // namespace

CongruenceCertificate verify_progression(const TruncatedSeries& s, const std::string& series_id,
                                         const mpz_class& A, const mpz_class& B, uint64_t m,
                                         int64_t horizon) {
  return verify_impl(s.val(), s.trunc(), s.modulus(), s.exact(), series_id, A, B, m, horizon,
                     [&](int64_t e) { return s.coeff(e); });
}

CongruenceCertificate verify_progression(CacheReader& reader, const std::string& series_id,
                                         const mpz_class& A, const mpz_class& B, uint64_t m,
                                         int64_t horizon) {
  return verify_impl(reader.val(), reader.trunc(), reader.modulus(), reader.modulus() == 0,
                     series_id, A, B, m, horizon, [&](int64_t e) { return reader.coeff(e); });
}

std::vector<CongruenceCertificate> scan_progressions(const TruncatedSeries& s,
                                                     const std::string& series_id, uint64_t m,
                                                     const std::vector<int64_t>& A_set,
                                                     int64_t horizon, int threads) {
  std::vector<int64_t> As = A_set;
  std::sort(As.begin(), As.end());
  As.erase(std::unique(As.begin(), As.end()), As.end());
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  std::vector<CongruenceCertificate> hits;
  for (int64_t A : As) {
    if (A < 1) raise(ErrorKind::bad_argument, "scan_progressions: A must be positive");
    int nw = std::max(1, std::min(threads, static_cast<int>(hw)));
    nw = static_cast<int>(std::min<int64_t>(nw, A));
    // workers split the residue range; hits are merged in B order afterwards
    std::vector<std::vector<CongruenceCertificate>> parts(static_cast<size_t>(nw));
    auto worker = [&](int w) {
      for (int64_t B = w; B < A; B += nw) {
        CongruenceCertificate c = verify_progression(
            s, series_id, mpz_class(static_cast<long>(A)), mpz_class(static_cast<long>(B)), m, horizon);
        if (c.status == CertStatus::verified_to_horizon) parts[static_cast<size_t>(w)].push_back(std::move(c));
      }
    };
    if (nw == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < nw; ++w) pool.emplace_back(worker, w);
      for (auto& t : pool) t.join();
    }
    std::vector<CongruenceCertificate> merged;
    for (auto& part : parts)
      for (auto& c : part) merged.push_back(std::move(c));
    std::sort(merged.begin(), merged.end(),
              [](const CongruenceCertificate& x, const CongruenceCertificate& y) { return x.B < y.B; });
    for (auto& c : merged) hits.push_back(std::move(c));
  }
  return hits;
}

AssembledCongruence assemble_congruence(uint64_t p, uint64_t ell, int64_t m, uint64_t Q,
                                        const MockThetaSpec& spec) {
  if (!is_prime(p) || !is_prime(ell) || !is_prime(Q))
    raise(ErrorKind::bad_argument, "assemble_congruence: p, ell, Q must be prime");
  if (Q % 2 == 0) raise(ErrorKind::bad_argument, "assemble_congruence: Q must be odd");
  if (m < 0) raise(ErrorKind::bad_argument, "assemble_congruence: m must be >= 0");
  if (p == ell || p == Q)
    raise(ErrorKind::bad_argument, "assemble_congruence: p must be coprime to ell and Q");
  bool q_equals_ell = (Q == ell);
  if (q_equals_ell && m != 0)
    raise(ErrorKind::bad_argument, "assemble_congruence: Q = ell is only available when m = 0");

  uint64_t delta = static_cast<uint64_t>(spec.delta);
  bool delta_condition =
      delta == 1 || ((delta % p != 0) && (delta % Q != 0) && (delta % ell != 0));

  // residue of p^3 ell^m modulo Q
  uint64_t lead_q =
      static_cast<uint64_t>((static_cast<__uint128_t>(pow_mod(p, 3, Q)) * pow_mod(ell, static_cast<uint64_t>(m), Q)) % Q);

  std::optional<uint64_t> a_required_mod_delta;
  if (delta_condition && delta > 1) {
    // A = tau ell^{-m} p^{-3} (mod delta) makes B' integral
    uint64_t tau_mod = static_cast<uint64_t>(((spec.tau % static_cast<int64_t>(delta)) +
                                              static_cast<int64_t>(delta)) % static_cast<int64_t>(delta));
    uint64_t lead_delta = static_cast<uint64_t>(
        (static_cast<__uint128_t>(pow_mod(ell, static_cast<uint64_t>(m), delta)) * pow_mod(p, 3, delta)) % delta);
    uint64_t inv = inv_mod(lead_delta, delta);
    a_required_mod_delta = static_cast<uint64_t>((static_cast<__uint128_t>(tau_mod) * inv) % delta);
  }

  int64_t cap = static_cast<int64_t>(4 * Q * delta * ell);
  int64_t a_found = 0;
  for (int64_t A = 1; A <= cap; ++A) {
    if (A % static_cast<int64_t>(p) == 0 || A % static_cast<int64_t>(ell) == 0) continue;
    if (a_required_mod_delta && static_cast<uint64_t>(A) % delta != *a_required_mod_delta) continue;
    uint64_t val_q = static_cast<uint64_t>(
        (static_cast<__uint128_t>(lead_q) * (static_cast<uint64_t>(A) % Q)) % Q);
    if (jacobi_symbol(-static_cast<int64_t>(val_q), Q) != -1) continue;
    a_found = A;
    break;
  }
  if (a_found == 0)
    raise(ErrorKind::search_exhausted,
          "assemble_congruence: no admissible A below cap " + std::to_string(cap));

  AssembledCongruence out;
  out.a = a_found;
  out.q_equals_ell = q_equals_ell;
  mpz_class p3 = mpz_class(static_cast<unsigned long>(p));
  p3 = p3 * p3 * p3;
  mpz_class ellm;
  mpz_ui_pow_ui(ellm.get_mpz_t(), ell, static_cast<unsigned long>(m));
  out.b_offset = p3 * ellm * a_found;
  if (q_equals_ell) {
    out.a_mod = p3 * static_cast<unsigned long>(p) * static_cast<unsigned long>(ell);
  } else {
    out.a_mod = p3 * static_cast<unsigned long>(p) * ellm * static_cast<unsigned long>(ell) *
                static_cast<unsigned long>(Q);
  }
  out.b_prime = mpq_class(out.b_offset - spec.tau, mpz_class(static_cast<long>(spec.delta)));
  out.b_prime.canonicalize();
  out.b_prime_integral = (out.b_prime.get_den() == 1);
  return out;
}

std::vector<int> ChiRule::values_for(uint64_t p) const {
  switch (kind) {
    case Kind::fixed: return {fixed_value};
    case Kind::kronecker: return {jacobi_symbol(D, p)};
    case Kind::automatic: return {1, -1};
  }
  return {1};
}

std::string ChiRule::describe() const {
  switch (kind) {
    case Kind::fixed: return "fixed:" + std::to_string(fixed_value);
    case Kind::kronecker: return "kronecker:" + std::to_string(D);
    case Kind::automatic: return "auto";
  }
  return "?";
}

HuntResult hunt_annihilating_prime(const TruncatedSeries& projected, const HuntOptions& opt) {
  if (opt.restrict_class && opt.class_modulus == 0)
    raise(ErrorKind::bad_argument, "hunt: class restriction requested without a class modulus");
  if (opt.bound < 0) raise(ErrorKind::bad_argument, "hunt: bound must be >= 0");

  std::vector<uint64_t> candidates;
  if (opt.restrict_class) {
    for (uint64_t p = opt.class_modulus - 1; p <= opt.p_max; p += opt.class_modulus)
      if (is_prime(p)) candidates.push_back(p);
  } else {
    for (uint64_t p = 3; p <= opt.p_max; p = next_prime(p)) candidates.push_back(p);
  }

  HuntResult res;
  bool any_window_ok = false;
  int64_t min_needed = 0;
  size_t admissible = 0;
  for (uint64_t p : candidates) {
    if (gcd_u64(p, 4 * opt.hecke_level) != 1 || p == opt.ell) continue;
    ++admissible;
    // exponent `bound` of T(p^2) output is certain iff trunc >= bound p^2 + 1
    int64_t needed = opt.bound * static_cast<int64_t>(p) * static_cast<int64_t>(p) + 1;
    if (projected.trunc() < needed) {
      min_needed = min_needed == 0 ? needed : std::min(min_needed, needed);
      continue;
    }
    any_window_ok = true;
    for (int chi : opt.chi.values_for(p)) {
      HeckeContext ctx;
      ctx.p = p;
      ctx.lambda = opt.lambda;
      ctx.chi_p = chi;
      ctx.ell = opt.ell;
      ctx.j = opt.j;
      ctx.level = opt.hecke_level;
      AnnihilationResult ann = annihilation_check(projected, ctx, opt.bound, opt.sturm);
      if (ann.annihilates) {
        res.hit = HuntHit{p, chi, ann};
        return res;
      }
      res.attempts.push_back(HuntAttempt{p, chi, ann.witness.value_or(-1)});
    }
  }
  if (!any_window_ok && admissible > 0) {
    res.min_trunc_needed = min_needed;
    raise(ErrorKind::window_exceeded,
          "hunt: certain window too small for every candidate prime (need trunc >= " +
              std::to_string(min_needed) + ")");
  }
  return res;
}

}  // namespace qcong
