#pragma once

#include <stdexcept>
#include <string>

namespace reliab {

// Coarse failure classes. The CLI maps them onto process exit codes.
enum class ErrorKind {
  config,  // invalid parameters, flags, or cumulant inputs
  data,    // unreadable or unusable input data (insufficient, degenerate)
  domain,  // argument outside a numeric kernel's domain
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error config_error(const std::string& what) {
  return {ErrorKind::config, what};
}
inline Error data_error(const std::string& what) {
  return {ErrorKind::data, what};
}
inline Error domain_error(const std::string& what) {
  return {ErrorKind::domain, what};
}

}  // namespace reliab
