#include "qcong/series.hpp"

#include "qcong/error.hpp"
#include "qcong/kernels.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

namespace qcong {

namespace {

// Guard against runaway windows before allocating.
constexpr int64_t max_window_cells = int64_t(1) << 34;

void check_window(int64_t val, int64_t trunc) {
  if (trunc < val) raise(ErrorKind::empty_window, "series window is empty");
  if (trunc - val > max_window_cells)
    raise(ErrorKind::window_exceeded, "series window larger than the resource cap");
}

template <class T>
std::vector<T> reduce_exact_block(const std::vector<BigInt>& src, uint64_t m) {
  std::vector<T> out(src.size());
  for (size_t i = 0; i < src.size(); ++i) out[i] = static_cast<T>(mpz_fdiv_ui(src[i].get_mpz_t(), m));
  return out;
}

TruncatedSeries::CoeffBlock zero_block(uint64_t modulus, size_t n) {
  if (modulus == 0) return std::vector<BigInt>(n);
  switch (cell_bytes_for_modulus(modulus)) {
    case 1: return std::vector<uint8_t>(n, 0);
    case 2: return std::vector<uint16_t>(n, 0);
    case 4: return std::vector<uint32_t>(n, 0);
    default: return std::vector<uint64_t>(n, 0);
  }
}

template <class T>
constexpr bool is_exact_block = std::is_same_v<std::decay_t<T>, std::vector<BigInt>>;

size_t block_size(const TruncatedSeries::CoeffBlock& b) {
  return std::visit([](const auto& v) { return v.size(); }, b);
}

}  // namespace

int cell_bytes_for_modulus(uint64_t m) {
  if (m < 2) raise(ErrorKind::bad_argument, "modulus must be >= 2");
  if (m <= 15) return 1;
  if (m <= 255) return 2;
  if (m <= 65535) return 4;
  if (m <= 4294967295ull) return 8;
  raise(ErrorKind::bad_argument, "modulus too large for machine cells");
}

TruncatedSeries TruncatedSeries::zeros(int64_t val, int64_t trunc, uint64_t modulus) {
  check_window(val, trunc);
  TruncatedSeries s;
  s.val_ = val;
  s.trunc_ = trunc;
  s.modulus_ = modulus;
  s.block_ = zero_block(modulus, static_cast<size_t>(trunc - val));
  return s;
}

TruncatedSeries TruncatedSeries::one(int64_t trunc, uint64_t modulus) {
  return monomial(0, 1, trunc, modulus);
}

TruncatedSeries TruncatedSeries::monomial(int64_t exponent, const BigInt& coefficient, int64_t trunc,
                                          uint64_t modulus) {
  if (exponent >= trunc)
    raise(ErrorKind::bad_argument, "monomial exponent must lie below the truncation order");
  TruncatedSeries s = zeros(exponent, trunc, modulus);
  std::visit(
      [&](auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (is_exact_block<V>) {
          v[0] = coefficient;
        } else {
          v[0] = static_cast<typename V::value_type>(mpz_fdiv_ui(coefficient.get_mpz_t(), modulus));
        }
      },
      s.block_);
  return s;
}

TruncatedSeries TruncatedSeries::from_coeffs(int64_t val, const std::vector<BigInt>& coeffs,
                                             uint64_t modulus) {
  TruncatedSeries s;
  s.val_ = val;
  s.trunc_ = val + static_cast<int64_t>(coeffs.size());
  s.modulus_ = modulus;
  if (modulus == 0) {
    s.block_ = coeffs;
  } else {
    switch (cell_bytes_for_modulus(modulus)) {
      case 1: s.block_ = reduce_exact_block<uint8_t>(coeffs, modulus); break;
      case 2: s.block_ = reduce_exact_block<uint16_t>(coeffs, modulus); break;
      case 4: s.block_ = reduce_exact_block<uint32_t>(coeffs, modulus); break;
      default: s.block_ = reduce_exact_block<uint64_t>(coeffs, modulus); break;
    }
  }
  return s;
}

TruncatedSeries TruncatedSeries::from_block(int64_t val, uint64_t modulus, CoeffBlock block) {
  int64_t trunc = val + static_cast<int64_t>(block_size(block));
  check_window(val, trunc);
  std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (is_exact_block<V>) {
          if (modulus != 0) raise(ErrorKind::bad_argument, "exact block with nonzero modulus");
        } else {
          using Cell = typename V::value_type;
          if (modulus == 0) raise(ErrorKind::bad_argument, "modular block without modulus");
          if (static_cast<int>(sizeof(Cell)) != cell_bytes_for_modulus(modulus))
            raise(ErrorKind::bad_argument, "cell width does not match modulus");
          for (Cell c : v)
            if (c >= modulus) raise(ErrorKind::bad_argument, "unreduced residue in coefficient block");
        }
      },
      block);
  TruncatedSeries s;
  s.val_ = val;
  s.trunc_ = trunc;
  s.modulus_ = modulus;
  s.block_ = std::move(block);
  return s;
}

BigInt TruncatedSeries::coeff(int64_t e) const {
  if (e >= trunc_)
    raise(ErrorKind::window_exceeded,
          "coefficient of q^" + std::to_string(e) + " is beyond the certain window (trunc " +
              std::to_string(trunc_) + ")");
  if (e < val_) return 0;
  size_t i = static_cast<size_t>(e - val_);
  return std::visit(
      [&](const auto& v) -> BigInt {
        using V = std::decay_t<decltype(v)>;
        if constexpr (is_exact_block<V>) return v[i];
        else return BigInt(static_cast<unsigned long>(v[i]));
      },
      block_);
}

uint64_t TruncatedSeries::coeff_u64(int64_t e) const {
  if (exact()) raise(ErrorKind::bad_argument, "coeff_u64 on an exact series");
  if (e >= trunc_)
    raise(ErrorKind::window_exceeded, "coefficient index beyond the certain window");
  if (e < val_) return 0;
  size_t i = static_cast<size_t>(e - val_);
  return std::visit(
      [&](const auto& v) -> uint64_t {
        using V = std::decay_t<decltype(v)>;
        if constexpr (is_exact_block<V>) return 0;  // unreachable
        else return static_cast<uint64_t>(v[i]);
      },
      block_);
}

bool TruncatedSeries::is_zero() const {
  return std::visit(
      [](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (is_exact_block<V>) {
          for (const BigInt& c : v)
            if (c != 0) return false;
        } else {
          for (auto c : v)
            if (c != 0) return false;
        }
        return true;
      },
      block_);
}

std::string TruncatedSeries::to_string(int64_t max_terms) const {
  std::ostringstream os;
  int64_t shown = 0;
  bool first = true;
  for (int64_t e = val_; e < trunc_ && shown < max_terms; ++e) {
    BigInt c = coeff(e);
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    ++shown;
    if (e == 0) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << "q^" << e;
    }
  }
  if (first) os << "0";
  os << " + O(q^" << trunc_ << ")";
  if (modulus_) os << " (mod " << modulus_ << ")";
  return os.str();
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.modulus() != b.modulus() || a.trunc() != b.trunc()) return false;
  int64_t lo = std::min(a.val(), b.val());
  for (int64_t e = lo; e < a.trunc(); ++e) {
    if (a.coeff(e) != b.coeff(e)) return false;
  }
  return true;
}

namespace {

// Shared layout for coefficientwise binary operations.
struct AlignedWindow {
  int64_t val;
  int64_t trunc;
};

template <bool Subtract>
TruncatedSeries add_sub_impl(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.modulus() != b.modulus())
    raise(ErrorKind::modulus_mismatch, "series_add/sub: operands carry different moduli");
  AlignedWindow w{std::min(a.val(), b.val()), std::min(a.trunc(), b.trunc())};
  if (w.trunc < w.val) w.val = w.trunc;  // a canonical empty operand can force an empty result
  size_t len = static_cast<size_t>(w.trunc - w.val);

  return std::visit(
      [&](const auto& ba, const auto& bb) -> TruncatedSeries {
        using A = std::decay_t<decltype(ba)>;
        using B = std::decay_t<decltype(bb)>;
        if constexpr (!std::is_same_v<A, B>) {
          raise(ErrorKind::modulus_mismatch, "series_add/sub: mismatched coefficient storage");
        } else if constexpr (is_exact_block<A>) {
          std::vector<BigInt> out(len);
          for (size_t i = 0; i < len; ++i) {
            int64_t e = w.val + static_cast<int64_t>(i);
            BigInt x = (e >= a.val() && e < a.trunc()) ? ba[static_cast<size_t>(e - a.val())] : BigInt(0);
            if (e >= b.val() && e < b.trunc()) {
              const BigInt& y = bb[static_cast<size_t>(e - b.val())];
              if constexpr (Subtract) x -= y; else x += y;
            }
            out[i] = std::move(x);
          }
          return TruncatedSeries::from_block(w.val, 0, std::move(out));
        } else {
          using Cell = typename A::value_type;
          Cell m = static_cast<Cell>(a.modulus());
          std::vector<Cell> out(len, 0);
          // copy a's overlap, then combine b's overlap in place
          int64_t a_lo = std::max(a.val(), w.val), a_hi = std::min(a.trunc(), w.trunc);
          if (a_hi > a_lo)
            std::memcpy(out.data() + (a_lo - w.val), ba.data() + (a_lo - a.val()),
                        static_cast<size_t>(a_hi - a_lo) * sizeof(Cell));
          int64_t b_lo = std::max(b.val(), w.val), b_hi = std::min(b.trunc(), w.trunc);
          if (b_hi > b_lo) {
            const auto& K = kernels::ops<Cell>();
            Cell* dst = out.data() + (b_lo - w.val);
            const Cell* src = bb.data() + (b_lo - b.val());
            size_t n = static_cast<size_t>(b_hi - b_lo);
            if constexpr (Subtract) K.sub_mod(dst, dst, src, n, m);
            else K.add_mod(dst, dst, src, n, m);
          }
          return TruncatedSeries::from_block(w.val, a.modulus(), std::move(out));
        }
      },
      a.block(), b.block());
}

}  // namespace

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  return add_sub_impl<false>(a, b);
}

TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  return add_sub_impl<true>(a, b);
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.modulus() != b.modulus())
    raise(ErrorKind::modulus_mismatch, "series_mul: operands carry different moduli");
  int64_t val = a.val() + b.val();
  int64_t trunc = std::min(a.trunc() + b.val(), b.trunc() + a.val());
  if (trunc <= val)
    raise(ErrorKind::empty_window, "series_mul: result window is empty");
  size_t len = static_cast<size_t>(trunc - val);

  return std::visit(
      [&](const auto& ba, const auto& bb) -> TruncatedSeries {
        using A = std::decay_t<decltype(ba)>;
        using B = std::decay_t<decltype(bb)>;
        if constexpr (!std::is_same_v<A, B>) {
          raise(ErrorKind::modulus_mismatch, "series_mul: mismatched coefficient storage");
        } else if constexpr (is_exact_block<A>) {
          std::vector<BigInt> out(len);
          size_t ia_max = std::min(ba.size(), len);
          for (size_t i = 0; i < ia_max; ++i) {
            if (ba[i] == 0) continue;
            size_t jmax = std::min(bb.size(), len - i);
            for (size_t j = 0; j < jmax; ++j) {
              if (bb[j] == 0) continue;
              mpz_addmul(out[i + j].get_mpz_t(), ba[i].get_mpz_t(), bb[j].get_mpz_t());
            }
          }
          return TruncatedSeries::from_block(val, 0, std::move(out));
        } else {
          using Cell = typename A::value_type;
          Cell m = static_cast<Cell>(a.modulus());
          const auto& K = kernels::ops<Cell>();
          std::vector<Cell> out(len, 0);
          size_t ia_max = std::min(ba.size(), len);
          for (size_t i = 0; i < ia_max; ++i) {
            if (ba[i] == 0) continue;
            K.axpy_mod(out.data() + i, bb.data(), std::min(bb.size(), len - i), ba[i], m);
          }
          return TruncatedSeries::from_block(val, a.modulus(), std::move(out));
        }
      },
      a.block(), b.block());
}

namespace {

enum class Pass { div_one_minus, mul_one_minus, mul_one_plus, div_one_plus };

TruncatedSeries stride_pass(const TruncatedSeries& s, int64_t m, Pass pass) {
  if (m <= 0) raise(ErrorKind::bad_argument, "stride must be a positive integer");
  auto block = s.block();
  size_t n = block_size(block);
  size_t stride = static_cast<size_t>(m);
  std::visit(
      [&](auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (is_exact_block<V>) {
          switch (pass) {
            case Pass::div_one_minus:
              for (size_t i = stride; i < n; ++i) v[i] += v[i - stride];
              break;
            case Pass::div_one_plus:
              for (size_t i = stride; i < n; ++i) v[i] -= v[i - stride];
              break;
            case Pass::mul_one_minus:
              for (size_t i = n; i-- > stride;) v[i] -= v[i - stride];
              break;
            case Pass::mul_one_plus:
              for (size_t i = n; i-- > stride;) v[i] += v[i - stride];
              break;
          }
        } else {
          using Cell = typename V::value_type;
          Cell mm = static_cast<Cell>(s.modulus());
          const auto& K = kernels::ops<Cell>();
          switch (pass) {
            case Pass::div_one_minus: K.prefix_add(v.data(), n, stride, mm); break;
            case Pass::div_one_plus: K.prefix_sub(v.data(), n, stride, mm); break;
            case Pass::mul_one_minus: K.suffix_sub(v.data(), n, stride, mm); break;
            case Pass::mul_one_plus: K.suffix_add(v.data(), n, stride, mm); break;
          }
        }
      },
      block);
  return TruncatedSeries::from_block(s.val(), s.modulus(), std::move(block));
}

}  // namespace

TruncatedSeries geometric_divide(const TruncatedSeries& s, int64_t m) {
  return stride_pass(s, m, Pass::div_one_minus);
}

TruncatedSeries geometric_multiply(const TruncatedSeries& s, int64_t m) {
  return stride_pass(s, m, Pass::mul_one_minus);
}

TruncatedSeries multiply_one_plus(const TruncatedSeries& s, int64_t m) {
  return stride_pass(s, m, Pass::mul_one_plus);
}

TruncatedSeries divide_one_plus(const TruncatedSeries& s, int64_t m) {
  return stride_pass(s, m, Pass::div_one_plus);
}

TruncatedSeries pochhammer(int sign, int64_t a, int64_t b, int64_t n, int64_t T, uint64_t modulus) {
  if (sign != 1 && sign != -1) raise(ErrorKind::bad_argument, "pochhammer: sign must be +1 or -1");
  if (a < 1 || b < 1 || n < 0) raise(ErrorKind::bad_argument, "pochhammer: need a, b >= 1 and n >= 0");
  if (T < 1) raise(ErrorKind::bad_argument, "pochhammer: truncation order must be >= 1");
  TruncatedSeries acc = TruncatedSeries::one(T, modulus);
  for (int64_t k = 0; k < n; ++k) {
    int64_t j = a + k * b;
    if (j >= T) break;  // remaining factors are 1 within the window
    acc = sign > 0 ? geometric_multiply(acc, j) : multiply_one_plus(acc, j);
  }
  return acc;
}

TruncatedSeries reduce_mod(const TruncatedSeries& s, uint64_t m) {
  if (m < 2) raise(ErrorKind::bad_argument, "reduce_mod: modulus must be >= 2");
  if (!s.exact() && s.modulus() % m != 0)
    raise(ErrorKind::modulus_mismatch, "reduce_mod: existing modulus is not a multiple of the target");
  size_t len = static_cast<size_t>(s.length());
  TruncatedSeries::CoeffBlock out = zero_block(m, len);
  std::visit(
      [&](auto& dst) {
        using D = std::decay_t<decltype(dst)>;
        if constexpr (!is_exact_block<D>) {
          using Cell = typename D::value_type;
          std::visit(
              [&](const auto& src) {
                using S = std::decay_t<decltype(src)>;
                if constexpr (is_exact_block<S>) {
                  for (size_t i = 0; i < len; ++i)
                    dst[i] = static_cast<Cell>(mpz_fdiv_ui(src[i].get_mpz_t(), m));
                } else {
                  for (size_t i = 0; i < len; ++i)
                    dst[i] = static_cast<Cell>(static_cast<uint64_t>(src[i]) % m);
                }
              },
              s.block());
        }
      },
      out);
  return TruncatedSeries::from_block(s.val(), m, std::move(out));
}

TruncatedSeries shifted(const TruncatedSeries& s, int64_t k) {
  return TruncatedSeries::from_block(s.val() + k, s.modulus(), s.block());
}

TruncatedSeries clipped(const TruncatedSeries& s, int64_t new_trunc) {
  if (new_trunc > s.trunc())
    raise(ErrorKind::bad_argument, "clipped: cannot extend the certain window");
  if (new_trunc <= s.val()) return TruncatedSeries::zeros(new_trunc, new_trunc, s.modulus());
  size_t keep = static_cast<size_t>(new_trunc - s.val());
  auto block = s.block();
  std::visit([&](auto& v) { v.resize(keep); }, block);
  return TruncatedSeries::from_block(s.val(), s.modulus(), std::move(block));
}

TruncatedSeries drop_below(const TruncatedSeries& s, int64_t new_val) {
  if (new_val <= s.val()) return s;
  if (new_val > s.trunc()) raise(ErrorKind::bad_argument, "drop_below: new val beyond trunc");
  for (int64_t e = s.val(); e < new_val; ++e) {
    if (s.coeff(e) != 0)
      raise(ErrorKind::support_violation,
            "drop_below: nonzero coefficient at exponent " + std::to_string(e));
  }
  size_t skip = static_cast<size_t>(new_val - s.val());
  auto block = s.block();
  std::visit([&](auto& v) { v.erase(v.begin(), v.begin() + static_cast<ptrdiff_t>(skip)); }, block);
  return TruncatedSeries::from_block(new_val, s.modulus(), std::move(block));
}

}  // namespace qcong
