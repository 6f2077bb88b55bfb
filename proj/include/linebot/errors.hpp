#pragma once

#include <stdexcept>
#include <string>

namespace linebot {

// All errors raised by the library derive from Error, so callers (the CLI in
// particular) can map them to a short machine-readable category.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& what)
      : std::runtime_error(what), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

struct InvalidGeometry : Error {
  explicit InvalidGeometry(const std::string& w) : Error("invalid_geometry", w) {}
};

struct OutOfDomain : Error {
  explicit OutOfDomain(const std::string& w) : Error("out_of_domain", w) {}
};

// A caller broke a documented precondition (dt <= 0, |duty| > 1, ...).
struct ContractViolation : Error {
  explicit ContractViolation(const std::string& w) : Error("contract", w) {}
};

struct NumericFault : Error {
  explicit NumericFault(const std::string& w) : Error("numeric", w) {}
};

struct EncodeError : Error {
  explicit EncodeError(const std::string& w) : Error("encode", w) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error("config", w) {}
};

struct IoError : Error {
  explicit IoError(const std::string& w) : Error("io", w) {}
};

}  // namespace linebot
