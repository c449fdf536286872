#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "roughcone/vector.hpp"

namespace roughcone {

/// Outcome of one axiom or condition inside a ValidationReport.
struct AxiomCheck {
  std::string name;
  bool passed = true;
  bool sampled = false;  // true when the verdict rests on random sampling
  std::size_t checks = 0;
  std::string detail;
  std::vector<VectorE> witness;  // empty when passed

  friend bool operator==(const AxiomCheck&, const AxiomCheck&) = default;
};

struct ValidationReport {
  std::string subject;
  std::vector<AxiomCheck> axioms;

  bool passed() const noexcept {
    for (const auto& a : axioms) {
      if (!a.passed) return false;
    }
    return true;
  }

  /// nullptr when no axiom of that name was checked.
  const AxiomCheck* find(const std::string& name) const noexcept {
    for (const auto& a : axioms) {
      if (a.name == name) return &a;
    }
    return nullptr;
  }

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

}  // namespace roughcone
