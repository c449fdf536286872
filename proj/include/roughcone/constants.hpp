#pragma once

#include <cstddef>
#include <cstdint>

#include "roughcone/cone.hpp"
#include "roughcone/validation.hpp"
#include "roughcone/vector.hpp"

namespace roughcone {

enum class Provenance { ExactDerived, EmpiricalLowerBound };

enum class ConstantMode { ExactIfKnown, Empirical };

/// A normality-type constant. Empirical values are maxima over sampled
/// admissible pairs and therefore lower bounds of the true supremum.
struct ConstantEstimate {
  double value = 1.0;
  Provenance provenance = Provenance::ExactDerived;
  std::size_t samples = 0;

  bool exact() const noexcept { return provenance == Provenance::ExactDerived; }
  friend bool operator==(const ConstantEstimate&, const ConstantEstimate&) = default;
};

/// K: 0 <= x <= y implies |x| <= K |y|; k: p <= c, -p <= c, c in P implies
/// |p| <= k |c|.
struct NormalityInfo {
  ConstantEstimate normal;
  ConstantEstimate star;
  friend bool operator==(const NormalityInfo&, const NormalityInfo&) = default;
};

/// Exact mode knows K = 1 for the orthant under every catalogued norm (all of
/// them are absolute and monotone); anything else throws NoExactConstant.
/// Empirical mode samples 0 <= x <= y and returns max |x|/|y|. The identity
/// pair x = y is always among the samples.
ConstantEstimate normal_constant(const Cone& cone, const NormSpec& norm, ConstantMode mode,
                                 std::uint64_t seed, std::size_t trials);

/// Same contract for the condition-(*) constant k. The pair p = c is always
/// sampled, so empirical values are >= 1.
ConstantEstimate star_constant(const Cone& cone, const NormSpec& norm, ConstantMode mode,
                               std::uint64_t seed, std::size_t trials);

NormalityInfo normality(const Cone& cone, const NormSpec& norm, ConstantMode mode,
                        std::uint64_t seed, std::size_t trials);

/// Samples admissible (p, c) and reports the first |p| > k |c| with witness
/// {p, c}. Check name: "star-condition".
ValidationReport verify_star_condition(const Cone& cone, const NormSpec& norm, double k,
                                       std::uint64_t seed, std::size_t trials);

}  // namespace roughcone
