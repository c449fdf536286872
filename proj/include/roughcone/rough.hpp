#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roughcone/cone.hpp"
#include "roughcone/metric.hpp"
#include "roughcone/sequence.hpp"
#include "roughcone/vector.hpp"

namespace roughcone {

/// Roughness degree r: either exactly 0 or an element of int P.
class Roughness {
 public:
  enum class Class { Zero, Interior };

  /// Classifies `value` against `cone`; throws InputError when it is
  /// neither zero nor interior.
  static Roughness make(const Cone& cone, VectorE value);
  static Roughness zero(std::size_t dim);

  const VectorE& value() const noexcept { return value_; }
  Class cls() const noexcept { return cls_; }
  bool is_zero() const noexcept { return cls_ == Class::Zero; }

  /// s * r, reclassified against `cone`.
  Roughness scaled(const Cone& cone, double s) const;

  friend bool operator==(const Roughness&, const Roughness&) = default;

 private:
  Roughness(VectorE value, Class cls) : value_(std::move(value)), cls_(cls) {}

  VectorE value_;
  Class cls_;
};

/// epsilon = t * witness for each scalar t, checked up to index `horizon`.
/// `window` is the stability window; 0 selects the default of 10% of the
/// horizon (at least 2).
struct EpsilonSchedule {
  VectorE witness{1.0, 1.0};
  std::vector<double> scalars = default_scalars();
  std::size_t horizon = 2000;
  std::size_t window = 0;

  /// Interior witness of `cone`, t_j = 2^-j for j = 0..12, horizon 2000.
  static EpsilonSchedule default_for(const Cone& cone);
  static std::vector<double> default_scalars();

  /// Throws InputError when the witness is not interior, the scalars are not
  /// strictly decreasing and positive, or horizon < 2.
  void validate(const Cone& cone) const;

  std::size_t stability_window() const noexcept;
  /// Same schedule at a different horizon (window rescales when automatic).
  EpsilonSchedule at_horizon(std::size_t horizon) const;

  friend bool operator==(const EpsilonSchedule&, const EpsilonSchedule&) = default;
};

enum class Outcome { Holds, Refuted, Inconclusive };

std::string to_string(Outcome outcome);

/// Per-scalar result of a tail check. `m` is the least start index whose
/// tail [m, N] is violation-free (meaningful when the outcome is Holds);
/// `last_violation` is 0 when no index violates.
struct ScalarResult {
  double t = 0.0;
  Outcome outcome = Outcome::Holds;
  std::size_t m = 1;
  std::size_t last_violation = 0;
  friend bool operator==(const ScalarResult&, const ScalarResult&) = default;
};

struct Refutation {
  double t = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;  // 0 for single-index checks
  std::string explanation;
  friend bool operator==(const Refutation&, const Refutation&) = default;
};

/// Finite-horizon semidecision of a "for every epsilon, eventually" claim.
///
/// Per scalar t: with V the set of violating indices (for pair checks, the
/// smaller index of each violating pair) and w the stability window,
///   - Holds when N - max V >= w (the satisfied tail is at least w long);
///   - Refuted when a violation lies in the last w indices and another one
///     lies before them (the violation persists across the window);
///   - Inconclusive when every violation lies inside the last w indices.
/// The overall outcome is Refuted if any scalar is refuted (the witness is
/// taken at the largest refuted t), else Inconclusive if any scalar is, else
/// Holds.
struct Verdict {
  Outcome outcome = Outcome::Holds;
  std::vector<ScalarResult> scalars;
  std::optional<Refutation> refutation;
  std::string reason;
  std::size_t horizon = 0;
  std::size_t window = 0;
  double smallest_scalar = 0.0;

  bool holds() const noexcept { return outcome == Outcome::Holds; }
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// d(x_n, x) << r + t e for all n in [m, N].
Verdict is_r_convergent_to(const ConeMetricSpec& spec, const SequenceSpec& seq,
                           std::span<const double> x, const Roughness& r,
                           const EpsilonSchedule& sched);

/// d(x_i, x_j) << r + t e for all m <= i, j <= N.
Verdict is_r_cauchy(const ConeMetricSpec& spec, const SequenceSpec& seq, const Roughness& r,
                    const EpsilonSchedule& sched);

/// is_r_cauchy with r = 0.
Verdict is_cauchy(const ConeMetricSpec& spec, const SequenceSpec& seq,
                  const EpsilonSchedule& sched);

/// Same checks on an already generated prefix x_1..x_N (terms.size() = N
/// overrides the schedule horizon).
Verdict r_convergent_on(const ConeMetricSpec& spec, std::span<const Point> terms,
                        std::span<const double> x, const Roughness& r,
                        const EpsilonSchedule& sched);
Verdict r_cauchy_on(const ConeMetricSpec& spec, std::span<const Point> terms, const Roughness& r,
                    const EpsilonSchedule& sched);

/// Scalar rough-Cauchy check on a sequence a_1..a_N in E: for each t,
/// least m with |a_i - a_j| < bound + t for all m <= i, j <= N.
Verdict norm_rough_cauchy_on(const NormSpec& norm, std::span<const VectorE> values, double bound,
                             const EpsilonSchedule& sched);

/// Scalar tail check: for each t, least m with values[n-1] < t for all n in
/// [m, N].
Verdict scalar_tail_below(std::span<const double> values, const EpsilonSchedule& sched);

/// Horizon-limited boundedness witness.
struct BoundWitness {
  VectorE g;                 // s + (lift + eta) * e
  VectorE s;                 // componentwise max of d(x_i, x_j), i, j <= horizon
  double lift = 0.0;         // extra multiple of e needed outside the orthant
  std::size_t horizon = 0;
  double eta = 0.0;
  bool horizon_limited = true;
  friend bool operator==(const BoundWitness&, const BoundWitness&) = default;
};

/// g = s + eta * e with s the componentwise maximum of d over the first
/// `horizon` terms. For cones other than the orthant a componentwise maximum
/// need not dominate every d-value in the cone order, so g is lifted along e
/// until it does. `e` defaults to the cone's interior witness.
BoundWitness is_bounded(const ConeMetricSpec& spec, const SequenceSpec& seq, std::size_t horizon,
                        double eta, std::optional<VectorE> e = std::nullopt);
BoundWitness bound_on(const ConeMetricSpec& spec, std::span<const Point> terms, double eta,
                      const VectorE& e);

/// Evenly spaced candidates from..to inclusive, coordinate-wise; each entry
/// is computed as ((count-1-k) * from + k * to) / (count-1).
std::vector<Point> linspace_grid(std::span<const double> from, std::span<const double> to,
                                 std::size_t count);

struct LimitCandidate {
  Point x;
  Verdict verdict;
};

/// r-convergence verdict for every grid candidate (RealVector spaces only).
std::vector<LimitCandidate> scan_limit_candidates(const ConeMetricSpec& spec,
                                                  const SequenceSpec& seq, const Roughness& r,
                                                  const EpsilonSchedule& sched,
                                                  std::span<const Point> grid);

/// The grid points x for which is_r_convergent_to(..., x, r, ...) Holds.
std::vector<Point> rough_limit_set(const ConeMetricSpec& spec, const SequenceSpec& seq,
                                   const Roughness& r, const EpsilonSchedule& sched,
                                   std::span<const Point> grid);

/// Effective horizon for `seq` under `sched`: the schedule horizon, clamped
/// to the table length for table sequences.
std::size_t effective_horizon(const SequenceSpec& seq, const EpsilonSchedule& sched);

}  // namespace roughcone
