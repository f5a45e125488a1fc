#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bonfstab {

/// Malformed data handed to a procedure (empty vectors, size mismatches, out-of-range values).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A threshold or tuning parameter outside its legal range.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pooled variance of a gene is zero, so the t statistic is undefined.
class DegenerateVariance : public std::domain_error {
 public:
  DegenerateVariance(std::size_t gene, const std::string& what)
      : std::domain_error(what), gene_(gene) {}

  std::size_t gene() const noexcept { return gene_; }

 private:
  std::size_t gene_;
};

/// Every violated field of a configuration document, collected in one pass.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> issues);

  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// File system failure; the message always carries the offending path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bonfstab
