#include "qcong/report.hpp"

#include "qcong/error.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace qcong {

Document& Document::add(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
  return *this;
}

Document& Document::add(const std::string& key, int64_t value) {
  return add(key, std::to_string(value));
}

Document& Document::add(const std::string& key, uint64_t value) {
  return add(key, std::to_string(value));
}

Document& Document::add(const std::string& key, const mpz_class& value) {
  return add(key, value.get_str());
}

Document& Document::add(const std::string& key, const mpq_class& value) {
  return add(key, value.get_str());
}

Document& Document::add(const std::string& key, double value) {
  std::ostringstream os;
  os.precision(12);
  os << value;
  return add(key, os.str());
}

std::string Document::serialize() const {
  std::ostringstream os;
  os << "document: " << doctype_ << "\n";
  for (const auto& [k, v] : entries_) os << k << ": " << v << "\n";
  return os.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
  std::random_device rd;
  std::string tmp = path + ".tmp" + std::to_string(rd());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) raise(ErrorKind::io_failure, "cannot create " + tmp);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) raise(ErrorKind::io_failure, "short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    raise(ErrorKind::io_failure, "cannot rename " + tmp + " to " + path);
  }
}

}  // namespace qcong
