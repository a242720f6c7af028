#pragma once

#include "qcong/series.hpp"

#include <cstdint>
#include <string>

namespace qcong {

// Coefficient cache files.
//
// Binary header: magic "QS1", val (signed 64-bit LE), trunc (signed 64-bit
// LE), modulus (unsigned 64-bit LE, 0 = exact), cell width (1 byte; 0 in
// exact mode). Modular caches follow with the raw little-endian coefficient
// block; exact caches follow with one decimal text line per coefficient.

// Atomic write: the file appears complete or not at all.
void write_cache(const std::string& path, const TruncatedSeries& s);

TruncatedSeries read_cache(const std::string& path);

// FNV-1a 64-bit checksum of a whole file, as embedded in certificates.
uint64_t fnv1a_file(const std::string& path);

uint64_t fnv1a_bytes(const void* data, size_t n, uint64_t seed = 14695981039346656037ull);

// Random access into a cache without loading the whole block; modular
// coefficients are read with seeks, exact caches are loaded on first use.
class CacheReader {
public:
  explicit CacheReader(const std::string& path);

  int64_t val() const { return val_; }
  int64_t trunc() const { return trunc_; }
  uint64_t modulus() const { return modulus_; }

  BigInt coeff(int64_t e);
  uint64_t checksum();

  // Full load (used by scans that touch most of the block anyway).
  TruncatedSeries load_all();

private:
  std::string path_;
  int64_t val_ = 0;
  int64_t trunc_ = 0;
  uint64_t modulus_ = 0;
  int cell_width_ = 0;
  int64_t block_offset_ = 0;
  bool loaded_ = false;
  TruncatedSeries full_;
  uint64_t checksum_ = 0;
  bool checksum_done_ = false;
};

}
