#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "roughcone/constants.hpp"
#include "roughcone/metric.hpp"
#include "roughcone/rough.hpp"
#include "roughcone/sequence.hpp"

namespace roughcone {

/// The four implications checked by the suite:
///   T33  r/2-convergent               =>  r-Cauchy
///   T34  bounded (witness g)          =>  g-Cauchy
///   T35  x, y both r/(2k^2)-Cauchy    =>  d(x_n, y_n) is |r|-Cauchy in E
///   T36  r-Cauchy, -> x, r <= d(x_n,x) =>  |d(x_n, x) - r| -> 0
enum class TheoremId { T33, T34, T35, T36 };

std::string to_string(TheoremId id);
/// Accepts "T33".."T36"; throws InputError otherwise.
TheoremId parse_theorem_id(const std::string& text);
const std::vector<TheoremId>& all_theorems();

/// One fully specified trial: everything needed to re-run it.
struct TheoremInstance {
  TheoremId id = TheoremId::T33;
  SpaceParams space;
  SequenceSpec x = SequenceSpec::oscillating({0.0}, {0.0});
  std::optional<SequenceSpec> y;  // T35 only
  Point limit;                    // T33 and T36
  VectorE r{0.0, 0.0};
  EpsilonSchedule schedule;       // horizon = verification horizon
  std::size_t witness_horizon = 1000;  // T34
  double eta = 0.1;                    // T34
  std::optional<Point> ball_center;    // T34: by-construction bound, if any
  double ball_radius = 0.0;
  ConstantEstimate star;    // T35
  ConstantEstimate normal;  // T35, T36
  bool allow_empirical = false;

  friend bool operator==(const TheoremInstance&, const TheoremInstance&) = default;
};

enum class PremiseStatus { Satisfied, Violated, Inconclusive };
std::string to_string(PremiseStatus status);

struct PremiseCheck {
  std::string name;
  PremiseStatus status = PremiseStatus::Satisfied;
  std::optional<Verdict> verdict;
  std::string detail;
  friend bool operator==(const PremiseCheck&, const PremiseCheck&) = default;
};

enum class Category { Confirmed, Vacuous, PremiseViolated, Inconclusive, Counterexample };
std::string to_string(Category category);

struct InstanceRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  PremiseStatus premises = PremiseStatus::Satisfied;
  /// Premises fail because the theorem's hypotheses are false (the
  /// implication holds vacuously), as opposed to a broken witness or
  /// construction.
  bool vacuous = false;
  std::vector<PremiseCheck> premise_checks;
  Verdict conclusion;
  Category category = Category::Inconclusive;
  std::string note;  // "horizon-artifact", "witness-not-reproduced", ...
  std::optional<bool> provision;       // T36
  std::optional<double> final_residual;  // T36: |d(x_N, x) - r|
  std::optional<BoundWitness> bound;   // T34
  TheoremInstance instance;

  friend bool operator==(const InstanceRecord&, const InstanceRecord&) = default;
};

struct SuiteCounts {
  std::size_t trials = 0;
  std::size_t confirmed = 0;
  std::size_t vacuous = 0;
  std::size_t premise_violated = 0;
  std::size_t inconclusive = 0;
  std::size_t counterexamples = 0;
  std::size_t horizon_artifacts = 0;  // included in `inconclusive`
  friend bool operator==(const SuiteCounts&, const SuiteCounts&) = default;
};

struct SuiteReport {
  TheoremId id = TheoremId::T33;
  std::string mode;  // "suite" or "search"
  std::uint64_t seed = 0;
  SuiteCounts counts;
  std::optional<double> provision_rate;  // T36
  std::vector<InstanceRecord> records;
  std::vector<std::size_t> counterexamples;  // indices into records

  friend bool operator==(const SuiteReport&, const SuiteReport&) = default;
};

/// Knobs for the by-construction samplers and for counterexample_search
/// (which uses `trials` as its budget and ignores the amplitude range).
struct SuiteConfig {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t horizon = 2000;
  SpaceParams space;
  VectorE r{1.0, 1.0};
  EpsilonSchedule schedule;  // horizon overridden by `horizon`
  // T33 / T35: profile amplitude as a fraction of the largest admissible one.
  double amplitude_min = 0.0;
  double amplitude_max = 1.0;
  // T34
  std::size_t witness_horizon = 1000;
  double eta = 0.1;
  double radius = 1.0;
  double step = 0.5;
  bool drift_control = false;
  // T35 / T36
  std::optional<ConstantEstimate> star;
  std::optional<ConstantEstimate> normal;
  bool allow_empirical = false;
  // T36: "decay" (convergent) or "shell" (stays at distance >= r)
  std::string family = "decay";

  /// Defaults for one theorem: the spaces and roughness values used by the
  /// acceptance runs.
  static SuiteConfig defaults_for(TheoremId id);

  friend bool operator==(const SuiteConfig&, const SuiteConfig&) = default;
};

/// Checks premises and conclusion of one instance and assigns its category.
/// A refuted conclusion under satisfied premises is re-checked at twice the
/// horizon; if it does not persist the record is labelled a horizon artifact.
/// Throws ConfigError for T35 instances whose constants are empirical when
/// `allow_empirical` is unset.
InstanceRecord check_instance(const TheoremInstance& instance, bool recheck = true);

/// True when the conclusion's refutation witness reproduces with a single
/// direct predicate evaluation.
bool reverify_refutation(const InstanceRecord& record);

SuiteReport check_thm_3_3(const SuiteConfig& config);
SuiteReport check_thm_3_4(const SuiteConfig& config);
SuiteReport check_thm_3_5(const SuiteConfig& config);
SuiteReport check_thm_3_6(const SuiteConfig& config);
SuiteReport run_suite(TheoremId id, const SuiteConfig& config);

/// Random instances without by-construction premises.
SuiteReport counterexample_search(TheoremId id, const SuiteConfig& config);

/// Runs caller-supplied instances (e.g. a counterexample's re-run config).
SuiteReport check_instances(TheoremId id, const std::vector<TheoremInstance>& instances,
                            std::uint64_t seed);

}  // namespace roughcone
