#pragma once

#include <stdexcept>
#include <string>

namespace nilsmooth {

/// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
  Config,    // invalid parameters or documents
  Resource,  // budget exhausted
  Domain,    // evaluation outside the realized window / domain
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error config_error(const std::string& what) { return Error(ErrorKind::Config, what); }
inline Error resource_error(const std::string& what) { return Error(ErrorKind::Resource, what); }
inline Error domain_error(const std::string& what) { return Error(ErrorKind::Domain, what); }

}  // namespace nilsmooth
