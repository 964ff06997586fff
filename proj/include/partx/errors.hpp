#pragma once

#include <stdexcept>
#include <string>

namespace partx {

/// An argument lies outside the domain an operation supports
/// (n = 0 for enumeration, n above the enumeration ceiling, non-prime modulus, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace partx
