#pragma once

#include <optional>
#include <string>
#include <utility>

namespace qortho {

/// Location and the two disagreeing sides of a failed identity.
struct Witness {
  std::string where;
  std::string lhs;
  std::string rhs;
};

struct CheckResult {
  std::string name;
  bool pass = true;
  std::optional<Witness> witness;

  static CheckResult ok(std::string name) { return {std::move(name), true, std::nullopt}; }
  static CheckResult fail(std::string name, Witness w) { return {std::move(name), false, std::move(w)}; }
  explicit operator bool() const { return pass; }
};

}  // namespace qortho
