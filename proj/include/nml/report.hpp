#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nml {

enum class Verdict { Holds, Fails };

inline const char* to_string(Verdict v) {
  return v == Verdict::Holds ? "holds" : "fails";
}

/// Verdict for one named property, with a witness when it fails.
///
/// `witness` holds raw bitmasks (atom sets, model sets) or indices; which
/// one, and in what order, is fixed per property and documented at the
/// checker that produces it. `detail` is the same witness rendered with
/// names. `scope` says how much was checked ("exhaustive", "sampled",
/// "bounded: ...", "finite language").
struct PropertyReport {
  std::string property;
  Verdict verdict = Verdict::Holds;
  std::vector<std::uint32_t> witness;
  std::string detail;
  std::string scope = "exhaustive";
  std::vector<std::string> notes;

  bool holds() const { return verdict == Verdict::Holds; }
};

inline PropertyReport holds(std::string property, std::string scope = "exhaustive") {
  PropertyReport r;
  r.property = std::move(property);
  r.scope = std::move(scope);
  return r;
}

inline PropertyReport fails(std::string property, std::vector<std::uint32_t> witness,
                            std::string detail, std::string scope = "exhaustive") {
  PropertyReport r;
  r.property = std::move(property);
  r.verdict = Verdict::Fails;
  r.witness = std::move(witness);
  r.detail = std::move(detail);
  r.scope = std::move(scope);
  return r;
}

/// Finds a report by property name; nullptr if absent.
inline const PropertyReport* find_report(const std::vector<PropertyReport>& reports,
                                         const std::string& property) {
  for (const auto& r : reports)
    if (r.property == property) return &r;
  return nullptr;
}

}  // namespace nml
