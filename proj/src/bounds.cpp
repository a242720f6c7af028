#include "qcong/bounds.hpp"

#include "qcong/error.hpp"
#include "qcong/hecke.hpp"
#include "qcong/ntheory.hpp"

#include <cmath>
#include <vector>

#include <mpfr.h>

namespace qcong {

namespace {

struct Gamma0Data {
  uint64_t index;    // mu = N prod (1 + 1/p)
  int64_t eps2;      // elliptic points of order 2
  int64_t eps3;      // elliptic points of order 3
  int64_t cusps;     // eps_infinity
  int64_t genus;
};

Gamma0Data gamma0_data(uint64_t N) {
  if (N < 1) raise(ErrorKind::bad_argument, "level must be positive");
  auto fac = factorize(N);
  uint64_t mu = N;
  for (auto [p, e] : fac) mu = mu / p * (p + 1);

  int64_t eps2;
  if (N % 4 == 0) {
    eps2 = 0;
  } else {
    eps2 = 1;
    for (auto [p, e] : fac) {
      if (p == 2) continue;             // factor 1
      eps2 *= (p % 4 == 1) ? 2 : 0;
    }
  }

  int64_t eps3;
  if (N % 9 == 0) {
    eps3 = 0;
  } else {
    eps3 = 1;
    for (auto [p, e] : fac) {
      if (p == 3) continue;             // factor 1
      eps3 *= (p % 3 == 1) ? 2 : 0;
    }
  }

  int64_t cusps = 0;
  for (uint64_t d : divisors(N)) cusps += static_cast<int64_t>(euler_phi(gcd_u64(d, N / d)));

  int64_t g12 = 12 + static_cast<int64_t>(mu) - 3 * eps2 - 4 * eps3 - 6 * cusps;
  if (g12 % 12 != 0) raise(ErrorKind::bad_argument, "internal: genus formula not integral");
  return Gamma0Data{mu, eps2, eps3, cusps, g12 / 12};
}

}  // namespace

int64_t genus_x0(uint64_t N) { return gamma0_data(N).genus; }

int64_t dim_cusp_forms(int64_t k, uint64_t N) {
  if (k % 2 != 0) raise(ErrorKind::bad_argument, "dim_cusp_forms: k must be even");
  if (k < 4) raise(ErrorKind::bad_argument, "dim_cusp_forms: k must be >= 4");
  Gamma0Data g = gamma0_data(N);
  int64_t d = (k - 1) * (g.genus - 1) + (k / 2 - 1) * g.cusps + (k / 4) * g.eps2 + (k / 3) * g.eps3;
  return d;
}

double BValue::log2() const {
  return mpz_get_d(exponent.get_mpz_t()) * std::log2(static_cast<double>(ell));
}

std::optional<mpz_class> BValue::evaluate(uint64_t max_bits) const {
  if (log2() > static_cast<double>(max_bits)) return std::nullopt;
  if (!exponent.fits_ulong_p()) return std::nullopt;
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), ell, exponent.get_ui());
  return out;
}

BValue compute_B(uint64_t ell, int64_t j, int64_t d, int64_t r, int64_t v) {
  if (!is_prime(ell)) raise(ErrorKind::bad_argument, "compute_B: ell must be prime");
  if (j < 1 || d < 1 || r < 1 || v < 0) raise(ErrorKind::bad_argument, "compute_B: argument out of range");
  BValue out;
  out.ell = ell;
  out.exponent = 4 * mpz_class(d) * r * (mpz_class(d) * v + j);
  return out;
}

BValue compute_B_general(uint64_t ell, int64_t d, const std::vector<BFactorInput>& factors) {
  if (!is_prime(ell)) raise(ErrorKind::bad_argument, "compute_B_general: ell must be prime");
  if (d < 1 || factors.empty()) raise(ErrorKind::bad_argument, "compute_B_general: argument out of range");
  BValue out;
  out.ell = ell;
  out.exponent = 0;
  for (const BFactorInput& f : factors) {
    if (f.r < 1 || f.v < 0) raise(ErrorKind::bad_argument, "compute_B_general: argument out of range");
    out.exponent += 4 * mpz_class(d) * f.r * (mpz_class(d) * f.v + f.a);
  }
  return out;
}

uint64_t compute_L(uint64_t ell, uint64_t N) {
  if (!is_prime(ell)) raise(ErrorKind::bad_argument, "compute_L: ell must be prime");
  if (N < 1) raise(ErrorKind::bad_argument, "compute_L: N must be >= 1");
  return ell * radical(N);
}

namespace {

struct MpfrGuard {
  mpfr_t x;
  explicit MpfrGuard(mpfr_prec_t prec) { mpfr_init2(x, prec); }
  ~MpfrGuard() { mpfr_clear(x); }
};

}  // namespace

mpz_class grh_bound(const mpz_class& B, const mpz_class& L) {
  if (B < 2 || L < 2) raise(ErrorKind::bad_argument, "grh_bound: B and L must be integers >= 2");
  const mpfr_prec_t prec = 768;
  MpfrGuard b(prec), l(prec), t(prec);
  mpfr_set_z(b.x, B.get_mpz_t(), MPFR_RNDN);
  mpfr_set_z(l.x, L.get_mpz_t(), MPFR_RNDN);
  mpfr_log(b.x, b.x, MPFR_RNDN);        // ln B
  mpfr_log(l.x, l.x, MPFR_RNDN);        // ln L
  mpfr_add(t.x, b.x, l.x, MPFR_RNDN);   // ln B + ln L
  mpfr_sqr(t.x, t.x, MPFR_RNDN);
  MpfrGuard b2(prec);
  mpfr_set_z(b2.x, B.get_mpz_t(), MPFR_RNDN);
  mpfr_sqr(b2.x, b2.x, MPFR_RNDN);
  mpfr_mul(t.x, t.x, b2.x, MPFR_RNDN);
  mpfr_mul_ui(t.x, t.x, 280, MPFR_RNDN);
  mpfr_ceil(t.x, t.x);
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), t.x, MPFR_RNDN);
  return out;
}

double grh_bound_log2(const BValue& B, uint64_t L) {
  double log2B = B.log2();
  double lnB = log2B * std::log(2.0);
  double lnL = std::log(static_cast<double>(L));
  return std::log2(280.0) + 2.0 * log2B + 2.0 * std::log2(lnB + lnL);
}

namespace {

LogScale unconditional_from_mpfr(mpfr_t b, mpfr_t l) {
  // 1 + (B - 1) log2 L + B log2 B
  const mpfr_prec_t prec = 256;
  MpfrGuard log2l(prec), log2b(prec), t1(prec), t2(prec), res(prec);
  mpfr_log2(log2l.x, l, MPFR_RNDN);
  mpfr_log2(log2b.x, b, MPFR_RNDN);
  mpfr_sub_ui(t1.x, b, 1, MPFR_RNDN);
  mpfr_mul(t1.x, t1.x, log2l.x, MPFR_RNDN);
  mpfr_mul(t2.x, b, log2b.x, MPFR_RNDN);
  mpfr_add(res.x, t1.x, t2.x, MPFR_RNDN);
  mpfr_add_ui(res.x, res.x, 1, MPFR_RNDN);
  LogScale out;
  out.approx = mpfr_get_d(res.x, MPFR_RNDN);
  char buf[64];
  mpfr_snprintf(buf, sizeof(buf), "%.10Re", res.x);
  out.decimal = buf;
  return out;
}

}  // namespace

LogScale unconditional_bound_log2(const BValue& B, uint64_t L) {
  if (L < 2) raise(ErrorKind::bad_argument, "unconditional_bound_log2: L must be >= 2");
  const mpfr_prec_t prec = 256;
  MpfrGuard b(prec), l(prec), e(prec);
  // B = ell^exponent evaluated as an mpfr value (exponent range is ample)
  mpfr_set_ui(b.x, B.ell, MPFR_RNDN);
  mpfr_set_z(e.x, B.exponent.get_mpz_t(), MPFR_RNDN);
  mpfr_pow(b.x, b.x, e.x, MPFR_RNDN);
  mpfr_set_ui(l.x, L, MPFR_RNDN);
  return unconditional_from_mpfr(b.x, l.x);
}

LogScale unconditional_bound_log2(const mpz_class& B, const mpz_class& L) {
  if (B < 2 || L < 2) raise(ErrorKind::bad_argument, "unconditional_bound_log2: B, L must be >= 2");
  const mpfr_prec_t prec = 256;
  MpfrGuard b(prec), l(prec);
  mpfr_set_z(b.x, B.get_mpz_t(), MPFR_RNDN);
  mpfr_set_z(l.x, L.get_mpz_t(), MPFR_RNDN);
  return unconditional_from_mpfr(b.x, l.x);
}

BoundReport pipeline_bound_report(uint64_t N, uint64_t Q, uint64_t ell, int64_t j, int64_t beta,
                                  int64_t v, int64_t r) {
  if (!is_prime(ell) || ell == 2) raise(ErrorKind::bad_argument, "pipeline_bound_report: ell must be an odd prime");
  if (!is_prime(Q) || Q == 2) raise(ErrorKind::bad_argument, "pipeline_bound_report: Q must be an odd prime");
  if (gcd_u64(ell, 4 * N) != 1)
    raise(ErrorKind::bad_argument, "pipeline_bound_report: ell must be coprime to 4N");
  if (j < 1 || beta < 0 || v < 0 || r < 1)
    raise(ErrorKind::bad_argument, "pipeline_bound_report: argument out of range");

  BoundReport rep;
  rep.ell = ell;
  rep.j = j;
  rep.v = v;
  rep.r = r;
  int64_t ell_beta = 1;
  for (int64_t i = 0; i < beta; ++i) ell_beta *= static_cast<int64_t>(ell);
  rep.weight = ell_beta * static_cast<int64_t>(ell * ell - 1);
  if (rep.weight > 2000000) raise(ErrorKind::bad_argument, "pipeline_bound_report: weight out of range");
  rep.sturm_N = N * Q * Q * Q * ell * ell;
  rep.level = 2 * rep.sturm_N;
  rep.d = dim_cusp_forms(rep.weight, rep.level);
  rep.sturm_ceiling = sturm_bound(rep.weight, rep.sturm_N).ceiling;
  rep.B = compute_B(ell, j, rep.d, r, v);
  rep.B_value = rep.B.evaluate();
  rep.L = compute_L(ell, rep.sturm_N);
  if (rep.B_value) rep.grh_value = grh_bound(*rep.B_value, mpz_class(static_cast<unsigned long>(rep.L)));
  rep.grh_log2 = grh_bound_log2(rep.B, rep.L);
  rep.unconditional_log2 = unconditional_bound_log2(rep.B, rep.L);
  return rep;
}

Document bound_report_document(const BoundReport& r) {
  Document doc("bound-report");
  doc.add("ell", r.ell);
  doc.add("j", r.j);
  doc.add("weight", r.weight);
  doc.add("level", r.level);
  doc.add("sturm_N", r.sturm_N);
  doc.add("d", r.d);
  doc.add("sturm_bound", r.sturm_ceiling);
  doc.add("v", r.v);
  doc.add("r", r.r);
  doc.add("B_exponent_base", r.B.ell);
  doc.add("B_exponent", r.B.exponent);
  doc.add("B_log2", r.B.log2());
  doc.add("B", r.B_value ? r.B_value->get_str() : std::string("(exponent form only)"));
  doc.add("L", r.L);
  doc.add("grh_bound", r.grh_value ? r.grh_value->get_str() : std::string("(log form only)"));
  doc.add("grh_bound_log2", r.grh_log2);
  doc.add("unconditional_log2_pre_A1", r.unconditional_log2.decimal);
  doc.add("A1", std::string("symbolic effectively-computable multiplier, applied in the exponent"));
  return doc;
}

}  // namespace qcong
