#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "roughcone/serialize.hpp"
#include "roughcone/theorems.hpp"

namespace roughcone {

enum class Command { ValidateCone, ValidateMetric, Analyze, Limset, Theorems, Search };

std::string to_string(Command command);
/// Throws ConfigError for names other than the six subcommands.
Command parse_command(const std::string& name);

/// Optional boundedness witness requested alongside an analyze run.
struct BoundRequest {
  std::size_t witness_horizon = 100;
  double eta = 0.1;
  friend bool operator==(const BoundRequest&, const BoundRequest&) = default;
};

/// Candidate points for limset: either explicit `points`, or `count` evenly
/// spaced points from `from` to `to`.
struct GridSpec {
  std::vector<Point> points;
  Point from, to;
  std::size_t count = 0;

  std::vector<Point> resolve() const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct SuiteEntry {
  TheoremId id = TheoremId::T33;
  SuiteConfig config;
  friend bool operator==(const SuiteEntry&, const SuiteEntry&) = default;
};

/// Fully resolved configuration. Only the fields used by `command` are
/// meaningful; the others keep their defaults.
struct RunConfig {
  Command command = Command::Analyze;
  std::uint64_t seed = 0;

  // validate-cone
  Cone cone = Cone::orthant(2);
  std::optional<NormSpec> norm;  // also estimate K and k under this norm
  std::size_t trials = 1000;
  std::optional<double> star_k;  // also verify condition (*) with this k

  // validate-metric, analyze, limset
  SpaceParams space;
  std::vector<Point> sample;  // validate-metric; empty selects the canonical sample
  std::optional<SequenceSpec> sequence;
  VectorE r{0.0, 0.0};
  EpsilonSchedule schedule;
  std::optional<Point> limit;  // analyze: r-convergence to this point instead of r-Cauchy
  std::optional<BoundRequest> bound;
  GridSpec grid;

  // theorems, search
  std::vector<SuiteEntry> suites;
  std::optional<TheoremId> instances_for;  // set when explicit instances are given
  std::vector<TheoremInstance> instances;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses a JSON config. `expected` is the subcommand the caller runs; the
/// document's "command" key may be omitted then, but must agree if present.
/// Syntax errors report the byte position; field errors report the path.
RunConfig parse_config(const std::string& text,
                       std::optional<Command> expected = std::nullopt);
RunConfig parse_config_json(const Json& doc, std::optional<Command> expected = std::nullopt);

/// Canonical JSON form; parse_config(render_config(c)) == c.
Json config_to_json(const RunConfig& config);
std::string render_config(const RunConfig& config);

/// Command-line overrides. The horizon applies to the analysis schedule, to
/// every suite (the T34 witness horizon becomes half of it) and to explicit
/// instances; ConfigError for commands without a horizon.
void apply_overrides(RunConfig& config, std::optional<std::uint64_t> seed,
                     std::optional<std::size_t> horizon);

}  // namespace roughcone
