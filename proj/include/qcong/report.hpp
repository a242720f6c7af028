#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qcong {

// Self-describing structured-text document: one "key: value" line per entry,
// insertion order preserved, so identical runs serialize byte-identically.
// The single `generated_at` timestamp is added by the CLI and excluded from
// determinism comparisons.
class Document {
public:
  explicit Document(std::string doctype) : doctype_(std::move(doctype)) {}

  Document& add(const std::string& key, const std::string& value);
  Document& add(const std::string& key, int64_t value);
  Document& add(const std::string& key, uint64_t value);
  Document& add(const std::string& key, const mpz_class& value);
  Document& add(const std::string& key, const mpq_class& value);
  Document& add(const std::string& key, double value);

  const std::string& doctype() const { return doctype_; }
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  std::string serialize() const;

private:
  std::string doctype_;
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Write-to-temp then atomic rename; the file appears complete or not at all.
void write_text_atomic(const std::string& path, const std::string& content);

}
