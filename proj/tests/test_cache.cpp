#include "doctest.h"

#include "oracles.hpp"
#include "qcong/cache.hpp"
#include "qcong/error.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

using namespace qcong;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) {
    path = (std::filesystem::temp_directory_path() / name).string();
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("cache round trip across cell widths and exact mode") {
  std::mt19937 rng(5);
  int idx = 0;
  for (uint64_t m : {uint64_t(0), uint64_t(5), uint64_t(125), uint64_t(40000), uint64_t(4294967295)}) {
    TempFile f("qcong_cache_test_" + std::to_string(idx++) + ".qs1");
    TruncatedSeries s = oracle::random_series(rng, m, 60, -20, 5, 1000);
    write_cache(f.path, s);
    TruncatedSeries back = read_cache(f.path);
    CHECK(back == s);
    CHECK(back.val() == s.val());
    CHECK(back.modulus() == s.modulus());

    CacheReader reader(f.path);
    CHECK(reader.val() == s.val());
    CHECK(reader.trunc() == s.trunc());
    for (int64_t e = s.val() - 2; e < s.trunc(); ++e) CHECK(reader.coeff(e) == s.coeff(e));
    CHECK_THROWS_AS(reader.coeff(s.trunc()), Error);
  }
}

TEST_CASE("cache checksum is stable and content-sensitive") {
  TempFile f("qcong_cache_ck.qs1");
  TruncatedSeries s = TruncatedSeries::from_coeffs(0, {1, 2, 3}, 7);
  write_cache(f.path, s);
  uint64_t c1 = fnv1a_file(f.path);
  CHECK(c1 == fnv1a_file(f.path));
  write_cache(f.path, TruncatedSeries::from_coeffs(0, {1, 2, 4}, 7));
  CHECK(c1 != fnv1a_file(f.path));
}

TEST_CASE("cache rejects corrupt headers") {
  TempFile f("qcong_cache_bad.qs1");
  {
    std::ofstream out(f.path, std::ios::binary);
    out << "XYZ garbage";
  }
  CHECK_THROWS_AS(read_cache(f.path), Error);
  CHECK_THROWS_AS(read_cache("/nonexistent/qcong.qs1"), Error);
}
