#include "qcong/cache.hpp"

#include "qcong/error.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <vector>

namespace qcong {

namespace {

constexpr char magic[3] = {'Q', 'S', '1'};

void put_u64le(std::string& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint64_t get_u64le(const unsigned char* p) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(p[i]) << (8 * i);
  return v;
}

template <class Cell>
void append_cells_le(std::string& out, const std::vector<Cell>& cells) {
  for (Cell c : cells) {
    for (size_t i = 0; i < sizeof(Cell); ++i)
      out.push_back(static_cast<char>((static_cast<uint64_t>(c) >> (8 * i)) & 0xff));
  }
}

std::string temp_sibling(const std::string& path) {
  std::random_device rd;
  return path + ".tmp" + std::to_string(rd());
}

}  // namespace

uint64_t fnv1a_bytes(const void* data, size_t n, uint64_t seed) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::io_failure, "cannot open " + path);
  uint64_t h = 14695981039346656037ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    h = fnv1a_bytes(buf, static_cast<size_t>(in.gcount()), h);
    if (!in) break;
  }
  return h;
}

void write_cache(const std::string& path, const TruncatedSeries& s) {
  std::string out;
  out.append(magic, 3);
  put_u64le(out, static_cast<uint64_t>(s.val()));
  put_u64le(out, static_cast<uint64_t>(s.trunc()));
  put_u64le(out, s.modulus());
  int width = s.exact() ? 0 : cell_bytes_for_modulus(s.modulus());
  out.push_back(static_cast<char>(width));

  std::visit(
      [&](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::vector<BigInt>>) {
          for (const BigInt& c : v) {
            out += c.get_str();
            out.push_back('\n');
          }
        } else {
          append_cells_le(out, v);
        }
      },
      s.block());

  std::string tmp = temp_sibling(path);
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) raise(ErrorKind::io_failure, "cannot create " + tmp);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) raise(ErrorKind::io_failure, "short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    raise(ErrorKind::io_failure, "cannot rename " + tmp + " to " + path);
  }
}

namespace {

struct Header {
  int64_t val;
  int64_t trunc;
  uint64_t modulus;
  int width;
  int64_t block_offset;
};

Header read_header(std::ifstream& in, const std::string& path) {
  unsigned char h[28];
  in.read(reinterpret_cast<char*>(h), sizeof(h));
  if (!in || std::memcmp(h, magic, 3) != 0)
    raise(ErrorKind::io_failure, path + ": not a QS1 coefficient cache");
  Header out;
  out.val = static_cast<int64_t>(get_u64le(h + 3));
  out.trunc = static_cast<int64_t>(get_u64le(h + 11));
  out.modulus = get_u64le(h + 19);
  out.width = h[27];
  out.block_offset = 28;
  if (out.trunc < out.val) raise(ErrorKind::io_failure, path + ": corrupt window");
  if (out.modulus != 0 && out.width != cell_bytes_for_modulus(out.modulus))
    raise(ErrorKind::io_failure, path + ": cell width inconsistent with modulus");
  if (out.modulus == 0 && out.width != 0)
    raise(ErrorKind::io_failure, path + ": exact cache with nonzero cell width");
  return out;
}

template <class Cell>
std::vector<Cell> read_cells(std::ifstream& in, size_t n, const std::string& path) {
  std::vector<Cell> cells(n);
  in.read(reinterpret_cast<char*>(cells.data()), static_cast<std::streamsize>(n * sizeof(Cell)));
  if (!in && n > 0) raise(ErrorKind::io_failure, path + ": truncated coefficient block");
  if constexpr (sizeof(Cell) > 1) {
    // stored little-endian; byte order matches on this target
    static_assert(__BYTE_ORDER__ == __ORDER_LITTLE_ENDIAN__, "big-endian hosts need a swap here");
  }
  return cells;
}

}  // namespace

TruncatedSeries read_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::io_failure, "cannot open " + path);
  Header h = read_header(in, path);
  size_t n = static_cast<size_t>(h.trunc - h.val);
  if (h.modulus == 0) {
    std::vector<BigInt> coeffs;
    coeffs.reserve(n);
    std::string line;
    for (size_t i = 0; i < n; ++i) {
      if (!std::getline(in, line)) raise(ErrorKind::io_failure, path + ": truncated exact block");
      coeffs.emplace_back(line);
    }
    return TruncatedSeries::from_block(h.val, 0, std::move(coeffs));
  }
  switch (h.width) {
    case 1: return TruncatedSeries::from_block(h.val, h.modulus, read_cells<uint8_t>(in, n, path));
    case 2: return TruncatedSeries::from_block(h.val, h.modulus, read_cells<uint16_t>(in, n, path));
    case 4: return TruncatedSeries::from_block(h.val, h.modulus, read_cells<uint32_t>(in, n, path));
    case 8: return TruncatedSeries::from_block(h.val, h.modulus, read_cells<uint64_t>(in, n, path));
    default: raise(ErrorKind::io_failure, path + ": bad cell width");
  }
}

CacheReader::CacheReader(const std::string& path) : path_(path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::io_failure, "cannot open " + path);
  Header h = read_header(in, path);
  val_ = h.val;
  trunc_ = h.trunc;
  modulus_ = h.modulus;
  cell_width_ = h.width;
  block_offset_ = h.block_offset;
}

BigInt CacheReader::coeff(int64_t e) {
  if (e >= trunc_)
    raise(ErrorKind::window_exceeded, path_ + ": coefficient index beyond cached window");
  if (e < val_) return 0;
  if (modulus_ == 0 || loaded_) {
    if (!loaded_) {
      full_ = read_cache(path_);
      loaded_ = true;
    }
    return full_.coeff(e);
  }
  std::ifstream in(path_, std::ios::binary);
  if (!in) raise(ErrorKind::io_failure, "cannot open " + path_);
  in.seekg(block_offset_ + (e - val_) * cell_width_);
  unsigned char buf[8] = {0};
  in.read(reinterpret_cast<char*>(buf), cell_width_);
  if (!in) raise(ErrorKind::io_failure, path_ + ": truncated coefficient block");
  uint64_t v = 0;
  for (int i = 0; i < cell_width_; ++i) v |= static_cast<uint64_t>(buf[i]) << (8 * i);
  return BigInt(static_cast<unsigned long>(v));
}

uint64_t CacheReader::checksum() {
  if (!checksum_done_) {
    checksum_ = fnv1a_file(path_);
    checksum_done_ = true;
  }
  return checksum_;
}

TruncatedSeries CacheReader::load_all() {
  if (!loaded_) {
    full_ = read_cache(path_);
    loaded_ = true;
  }
  return full_;
}

}  // namespace qcong
