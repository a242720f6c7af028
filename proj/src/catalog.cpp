#include "qcong/catalog.hpp"

#include "qcong/error.hpp"
#include "qcong/kernels.hpp"
#include "qcong/ntheory.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

namespace qcong {

void MockThetaSpec::validate() const {
  if (delta < 1) raise(ErrorKind::bad_argument, name + ": delta must be positive");
  if (std::gcd(delta, std::abs(tau)) != 1)
    raise(ErrorKind::bad_argument, name + ": delta and tau must be coprime");
  if (level % 4 != 0) raise(ErrorKind::bad_argument, name + ": level must be divisible by 4");
  if (shadow_deltas.empty()) raise(ErrorKind::bad_argument, name + ": shadow support must be nonempty");
  for (int64_t d : shadow_deltas) {
    if (d < 1) raise(ErrorKind::bad_argument, name + ": shadow deltas must be positive");
    for (auto [p, e] : factorize(static_cast<uint64_t>(d)))
      if (e > 1) raise(ErrorKind::bad_argument, name + ": shadow delta " + std::to_string(d) + " is not squarefree");
  }
  if (kind == SeriesKind::eulerian) {
    // leading exponent must strictly increase from nstart on
    if (term_rule.e2 < 0 || term_rule.e2 * (2 * term_rule.nstart + 1) + term_rule.e1 < 1)
      raise(ErrorKind::bad_argument, name + ": exponent polynomial must be increasing");
    for (const FactorPattern& f : term_rule.factors) {
      if (f.sign != 1 && f.sign != -1) raise(ErrorKind::bad_argument, name + ": factor sign must be +-1");
      if (f.a < 1 || f.b < 1) raise(ErrorKind::bad_argument, name + ": factor offsets must be >= 1");
      if (f.s1 < 0 || f.s1 * term_rule.nstart + f.s0 < 0)
        raise(ErrorKind::bad_argument, name + ": factor subscript must be nonnegative");
      if (f.power == 0) raise(ErrorKind::bad_argument, name + ": factor power must be nonzero");
    }
  }
}

const MockThetaSpec* Catalog::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

const MockThetaSpec& Catalog::require(const std::string& name) const {
  const MockThetaSpec* e = find(name);
  if (!e) raise(ErrorKind::bad_argument, "catalog has no series named '" + name + "'");
  return *e;
}

Catalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::io_failure, "cannot open catalog file " + path);
  Catalog cat;
  MockThetaSpec cur;
  bool open = false;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    raise(ErrorKind::io_failure, path + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "series") {
      if (open) fail("missing 'end' before new series");
      cur = MockThetaSpec{};
      if (!(ls >> cur.name)) fail("series needs a name");
      open = true;
    } else if (!open) {
      fail("directive outside a series block: " + key);
    } else if (key == "kind") {
      std::string k;
      ls >> k;
      if (k == "product") cur.kind = SeriesKind::product;
      else if (k == "eulerian") cur.kind = SeriesKind::eulerian;
      else fail("unknown kind: " + k);
    } else if (key == "nstart") {
      if (!(ls >> cur.term_rule.nstart)) fail("bad nstart");
    } else if (key == "expo") {
      if (!(ls >> cur.term_rule.e2 >> cur.term_rule.e1 >> cur.term_rule.e0)) fail("expo needs e2 e1 e0");
    } else if (key == "factor") {
      FactorPattern f;
      if (!(ls >> f.sign >> f.a >> f.b >> f.s1 >> f.s0 >> f.power)) fail("factor needs sign a b s1 s0 power");
      cur.term_rule.factors.push_back(f);
    } else if (key == "delta") {
      if (!(ls >> cur.delta)) fail("bad delta");
    } else if (key == "tau") {
      if (!(ls >> cur.tau)) fail("bad tau");
    } else if (key == "level") {
      if (!(ls >> cur.level)) fail("bad level");
    } else if (key == "shadows") {
      int64_t d;
      cur.shadow_deltas.clear();
      while (ls >> d) cur.shadow_deltas.push_back(d);
      if (cur.shadow_deltas.empty()) fail("shadows needs at least one value");
    } else if (key == "end") {
      cur.validate();
      cat.entries.push_back(cur);
      open = false;
    } else {
      fail("unknown directive: " + key);
    }
  }
  if (open) fail("unterminated series block");
  if (cat.entries.empty()) raise(ErrorKind::io_failure, path + ": catalog is empty");
  return cat;
}

std::string default_catalog_path() {
  if (const char* env = std::getenv("QCONG_CATALOG")) return env;
  namespace fs = std::filesystem;
  if (fs::exists("data/catalog.qcat")) return "data/catalog.qcat";
#ifdef QCONG_DEFAULT_CATALOG
  if (fs::exists(QCONG_DEFAULT_CATALOG)) return QCONG_DEFAULT_CATALOG;
#endif
  raise(ErrorKind::io_failure,
        "no catalog file found (set QCONG_CATALOG or pass --catalog)");
}

// ---------------------------------------------------------------------------
// Eulerian expansion engine
//
// The term for index n is maintained incrementally: stepping n -> n+1
// multiplies by q^{e(n+1)-e(n)} (a window shift) and by the s1 new factor
// units of each pattern, each a single stride pass. Cost per step is linear
// in the remaining window, so a full expansion is O(T^{3/2}) for quadratic
// exponents. The per-term-from-scratch route exists only in tests.
// ---------------------------------------------------------------------------

namespace {

template <class Cell>
struct ModPass {
  std::vector<Cell>* v;
  Cell m;
  const kernels::Ops<Cell>& K = kernels::ops<Cell>();

  void divide_one_minus(size_t j) { K.prefix_add(v->data(), v->size(), j, m); }
  void divide_one_plus(size_t j) { K.prefix_sub(v->data(), v->size(), j, m); }
  void multiply_one_minus(size_t j) { K.suffix_sub(v->data(), v->size(), j, m); }
  void multiply_one_plus(size_t j) { K.suffix_add(v->data(), v->size(), j, m); }
};

struct ExactPass {
  std::vector<BigInt>* v;

  void divide_one_minus(size_t j) {
    auto& b = *v;
    for (size_t i = j; i < b.size(); ++i) b[i] += b[i - j];
  }
  void divide_one_plus(size_t j) {
    auto& b = *v;
    for (size_t i = j; i < b.size(); ++i) b[i] -= b[i - j];
  }
  void multiply_one_minus(size_t j) {
    auto& b = *v;
    for (size_t i = b.size(); i-- > j;) b[i] -= b[i - j];
  }
  void multiply_one_plus(size_t j) {
    auto& b = *v;
    for (size_t i = b.size(); i-- > j;) b[i] += b[i - j];
  }
};

// Multiply the term buffer by (1 - sign q^j)^{unit of power}. A unit of a
// positive power is a multiplication pass, of a negative power a division.
template <class Passes>
void apply_factor_unit(Passes& ps, const FactorPattern& f, int64_t j) {
  size_t n = ps.v->size();
  if (j <= 0 || static_cast<size_t>(j) >= n) return;  // factor is 1 inside the window
  size_t js = static_cast<size_t>(j);
  int64_t reps = std::abs(f.power);
  for (int64_t r = 0; r < reps; ++r) {
    if (f.power > 0) {
      if (f.sign > 0) ps.multiply_one_minus(js);
      else ps.multiply_one_plus(js);
    } else {
      if (f.sign > 0) ps.divide_one_minus(js);
      else ps.divide_one_plus(js);
    }
  }
}

template <class Passes, class Vec, class AddInto>
void expand_eulerian_generic(const TermRule& rule, int64_t T, Vec& acc, Vec& term, Passes ps,
                             AddInto add_into) {
  int64_t n = rule.nstart;
  int64_t base = rule.exponent(n);
  if (base >= T) return;
  term.assign(static_cast<size_t>(T - base), typename Vec::value_type(0));
  term[0] = 1;
  for (const FactorPattern& f : rule.factors) {
    int64_t sub = f.s1 * n + f.s0;
    for (int64_t k = 0; k < sub; ++k) apply_factor_unit(ps, f, f.a + k * f.b);
  }
  while (true) {
    add_into(acc, term, base);
    int64_t n2 = n + 1;
    int64_t base2 = rule.exponent(n2);
    if (base2 <= base) raise(ErrorKind::bad_argument, "term exponents must increase");
    if (base2 >= T) break;
    term.resize(static_cast<size_t>(T - base2));  // shift by q^{base2-base}: window shrinks
    for (const FactorPattern& f : rule.factors) {
      int64_t k0 = f.s1 * n + f.s0, k1 = f.s1 * n2 + f.s0;
      for (int64_t k = k0; k < k1; ++k) apply_factor_unit(ps, f, f.a + k * f.b);
    }
    n = n2;
    base = base2;
  }
}

template <class Cell>
TruncatedSeries expand_eulerian_mod(const TermRule& rule, int64_t T, uint64_t modulus) {
  Cell m = static_cast<Cell>(modulus);
  const auto& K = kernels::ops<Cell>();
  std::vector<Cell> acc(static_cast<size_t>(T), 0);
  std::vector<Cell> term;
  ModPass<Cell> ps{&term, m};
  expand_eulerian_generic(rule, T, acc, term, ps,
                          [&](std::vector<Cell>& dst, const std::vector<Cell>& src, int64_t base) {
                            K.add_mod(dst.data() + base, dst.data() + base, src.data(), src.size(), m);
                          });
  return TruncatedSeries::from_block(0, modulus, std::move(acc));
}

TruncatedSeries expand_eulerian_exact(const TermRule& rule, int64_t T) {
  std::vector<BigInt> acc(static_cast<size_t>(T));
  std::vector<BigInt> term;
  ExactPass ps{&term};
  expand_eulerian_generic(rule, T, acc, term, ps,
                          [](std::vector<BigInt>& dst, const std::vector<BigInt>& src, int64_t base) {
                            for (size_t i = 0; i < src.size(); ++i) dst[static_cast<size_t>(base) + i] += src[i];
                          });
  return TruncatedSeries::from_block(0, 0, std::move(acc));
}

// Generalized pentagonal numbers k(3k-1)/2 with the +,+,-,- sign pattern of
// Euler's recurrence p(n) = sum_k (-1)^{k-1} [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)].
struct PentagonalTable {
  std::vector<int64_t> g;
  std::vector<int> sign;

  explicit PentagonalTable(int64_t limit) {
    for (int64_t k = 1;; ++k) {
      int64_t g1 = k * (3 * k - 1) / 2;
      if (g1 > limit) break;
      int s = (k % 2 == 1) ? 1 : -1;
      g.push_back(g1);
      sign.push_back(s);
      int64_t g2 = k * (3 * k + 1) / 2;
      if (g2 <= limit) {
        g.push_back(g2);
        sign.push_back(s);
      }
    }
  }
};

template <class Cell>
TruncatedSeries partition_pentagonal_mod(int64_t T, uint64_t modulus) {
  std::vector<Cell> p(static_cast<size_t>(T), 0);
  p[0] = 1;
  PentagonalTable pent(T - 1);
  for (int64_t n = 1; n < T; ++n) {
    uint64_t acc = 0;
    for (size_t t = 0; t < pent.g.size(); ++t) {
      int64_t g = pent.g[t];
      if (g > n) break;
      Cell c = p[static_cast<size_t>(n - g)];
      acc += pent.sign[t] > 0 ? static_cast<uint64_t>(c) : modulus - c;  // adds a multiple of m when c = 0
    }
    p[static_cast<size_t>(n)] = static_cast<Cell>(acc % modulus);
  }
  return TruncatedSeries::from_block(0, modulus, std::move(p));
}

TruncatedSeries partition_pentagonal_exact(int64_t T) {
  std::vector<BigInt> p(static_cast<size_t>(T));
  p[0] = 1;
  PentagonalTable pent(T - 1);
  for (int64_t n = 1; n < T; ++n) {
    BigInt acc = 0;
    for (size_t t = 0; t < pent.g.size(); ++t) {
      int64_t g = pent.g[t];
      if (g > n) break;
      if (pent.sign[t] > 0) acc += p[static_cast<size_t>(n - g)];
      else acc -= p[static_cast<size_t>(n - g)];
    }
    p[static_cast<size_t>(n)] = std::move(acc);
  }
  return TruncatedSeries::from_block(0, 0, std::move(p));
}

}  // namespace

TruncatedSeries expand_series(const MockThetaSpec& spec, int64_t T, uint64_t modulus) {
  if (T < 1) raise(ErrorKind::bad_argument, "expand_series: truncation order must be >= 1");
  if (spec.kind == SeriesKind::product) return partition_series(T, modulus);
  if (modulus == 0) return expand_eulerian_exact(spec.term_rule, T);
  switch (cell_bytes_for_modulus(modulus)) {
    case 1: return expand_eulerian_mod<uint8_t>(spec.term_rule, T, modulus);
    case 2: return expand_eulerian_mod<uint16_t>(spec.term_rule, T, modulus);
    case 4: return expand_eulerian_mod<uint32_t>(spec.term_rule, T, modulus);
    default: return expand_eulerian_mod<uint64_t>(spec.term_rule, T, modulus);
  }
}

TruncatedSeries partition_series(int64_t T, uint64_t modulus) {
  if (T < 1) raise(ErrorKind::bad_argument, "partition_series: truncation order must be >= 1");
  if (modulus == 0) return partition_pentagonal_exact(T);
  switch (cell_bytes_for_modulus(modulus)) {
    case 1: return partition_pentagonal_mod<uint8_t>(T, modulus);
    case 2: return partition_pentagonal_mod<uint16_t>(T, modulus);
    case 4: return partition_pentagonal_mod<uint32_t>(T, modulus);
    default: return partition_pentagonal_mod<uint64_t>(T, modulus);
  }
}

TruncatedSeries partition_series_product(int64_t T, uint64_t modulus) {
  if (T < 1) raise(ErrorKind::bad_argument, "partition_series_product: truncation order must be >= 1");
  TruncatedSeries acc = TruncatedSeries::one(T, modulus);
  for (int64_t n = 1; n < T; ++n) acc = geometric_divide(acc, n);
  return acc;
}

TruncatedSeries reindex_to_F(const TruncatedSeries& s, const MockThetaSpec& spec) {
  int64_t d = spec.delta, t = spec.tau;
  int64_t out_val = d * s.val() + t;
  // trunc = delta * s.trunc + tau: the tail zeros above the last image point
  // are certain too
  size_t out_len = static_cast<size_t>(d * s.trunc() + t - out_val);
  TruncatedSeries::CoeffBlock out =
      std::visit([&](const auto& v) -> TruncatedSeries::CoeffBlock {
        std::decay_t<decltype(v)> o(out_len);
        for (size_t i = 0; i < v.size(); ++i) o[static_cast<size_t>(d) * i] = v[i];
        return o;
      }, s.block());
  return TruncatedSeries::from_block(out_val, s.modulus(), std::move(out));
}

TruncatedSeries reindex_from_F(const TruncatedSeries& s, const MockThetaSpec& spec) {
  int64_t d = spec.delta, t = spec.tau;
  auto ceil_div = [](int64_t a, int64_t b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); };
  int64_t out_val = ceil_div(s.val() - t, d);
  int64_t out_trunc = ceil_div(s.trunc() - t, d);
  if (out_trunc < out_val) out_trunc = out_val;
  // support check on the stored window
  std::visit(
      [&](const auto& v) {
        for (size_t i = 0; i < v.size(); ++i) {
          if (v[i] == 0) continue;
          int64_t e = s.val() + static_cast<int64_t>(i);
          if ((e - t) % d != 0)
            raise(ErrorKind::support_violation,
                  "reindex_from_F: exponent " + std::to_string(e) + " is not congruent to tau mod delta");
        }
      },
      s.block());
  size_t out_len = static_cast<size_t>(out_trunc - out_val);
  TruncatedSeries::CoeffBlock out =
      std::visit([&](const auto& v) -> TruncatedSeries::CoeffBlock {
        std::decay_t<decltype(v)> o(out_len);
        for (size_t i = 0; i < out_len; ++i) {
          int64_t e = d * (out_val + static_cast<int64_t>(i)) + t;
          if (e >= s.val() && e < s.trunc()) o[i] = v[static_cast<size_t>(e - s.val())];
        }
        return o;
      }, s.block());
  return TruncatedSeries::from_block(out_val, s.modulus(), std::move(out));
}

}  // namespace qcong
