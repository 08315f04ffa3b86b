#pragma once

#include <stdexcept>
#include <string>

namespace qortho {

enum class Errc {
  DivisionByZero,
  PoleAtOne,
  ResidualT,
  DimMismatch,
  Singular,
  NotSymmetric,
  Degenerate,
  NotReal,
  NotInvolution,
  RankDeficient,
  BadN,
  BadFamily,
  InvalidSpec,
  ConditionFailed,
  NoPlaneConjugation,
  Unclassifiable,
  WitnessNotAutomorphism,
  IdentityFailed,
  RankMismatch,
};

constexpr const char* to_string(Errc e) {
  switch (e) {
  case Errc::DivisionByZero: return "DivisionByZero";
  case Errc::PoleAtOne: return "PoleAtOne";
  case Errc::ResidualT: return "ResidualT";
  case Errc::DimMismatch: return "DimMismatch";
  case Errc::Singular: return "Singular";
  case Errc::NotSymmetric: return "NotSymmetric";
  case Errc::Degenerate: return "Degenerate";
  case Errc::NotReal: return "NotReal";
  case Errc::NotInvolution: return "NotInvolution";
  case Errc::RankDeficient: return "RankDeficient";
  case Errc::BadN: return "BadN";
  case Errc::BadFamily: return "BadFamily";
  case Errc::InvalidSpec: return "InvalidSpec";
  case Errc::ConditionFailed: return "ConditionFailed";
  case Errc::NoPlaneConjugation: return "NoPlaneConjugation";
  case Errc::Unclassifiable: return "Unclassifiable";
  case Errc::WitnessNotAutomorphism: return "WitnessNotAutomorphism";
  case Errc::IdentityFailed: return "IdentityFailed";
  case Errc::RankMismatch: return "RankMismatch";
  }
  return "Unknown";
}

/// Library failure carrying a machine-readable code. `detail` holds the
/// failing condition name or witness when one exists.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& detail = {})
      : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
        code_(code), detail_(detail) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

private:
  Errc code_;
  std::string detail_;
};

}  // namespace qortho
