#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "roughcone/constants.hpp"
#include "roughcone/metric.hpp"
#include "roughcone/rough.hpp"
#include "roughcone/theorems.hpp"

namespace roughcone {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// Strict object access: every key must be consumed before finish(), and
/// all errors carry the dotted path of the offending field.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path);

  /// nullptr when absent; marks the key as used.
  const Json* get(const std::string& key);
  const Json& require(const std::string& key);
  bool has(const std::string& key) const;
  std::string at(const std::string& key) const;
  const std::string& path() const noexcept { return path_; }

  /// Throws ConfigError on the first unused key.
  void finish() const;

 private:
  const Json& j_;
  std::string path_;
  std::vector<std::string> used_;
};

// Scalar readers; `path` is used in error messages.
double read_number(const Json& j, const std::string& path);
std::size_t read_count(const Json& j, const std::string& path);
std::uint64_t read_u64(const Json& j, const std::string& path);
bool read_bool(const Json& j, const std::string& path);
std::string read_string(const Json& j, const std::string& path);
/// A point: an array of numbers, or a bare number for one coordinate.
Point read_point(const Json& j, const std::string& path);
std::vector<Point> read_points(const Json& j, const std::string& path);
VectorE read_vector(const Json& j, const std::string& path);

Json to_json(const VectorE& v);
Json to_json(const NormSpec& norm);
Json to_json(const Cone& cone);
Json to_json(const SpaceParams& space);
Json to_json(const SequenceSpec& seq);
Json to_json(const EpsilonSchedule& sched);
Json to_json(const ConstantEstimate& c);
Json to_json(const TheoremInstance& inst);

NormSpec norm_from_json(const Json& j, const std::string& path);
Cone cone_from_json(const Json& j, const std::string& path);
SpaceParams space_from_json(const Json& j, const std::string& path);
SequenceSpec sequence_from_json(const Json& j, const std::string& path);
/// Missing fields default to EpsilonSchedule::default_for(cone).
EpsilonSchedule schedule_from_json(const Json& j, const std::string& path, const Cone& cone);
ConstantEstimate constant_from_json(const Json& j, const std::string& path);
TheoremInstance instance_from_json(const Json& j, const std::string& path);

// Report-side (write-only) encodings.
Json to_json(const ValidationReport& report);
Json to_json(const NormalityInfo& info);
Json to_json(const Verdict& verdict);
Json to_json(const BoundWitness& bound);
Json to_json(const PremiseCheck& check);
Json to_json(const InstanceRecord& record);
Json to_json(const SuiteCounts& counts);
Json to_json(const SuiteReport& report);

/// Self-contained config that re-runs exactly one instance.
Json rerun_config(const TheoremInstance& inst, std::uint64_t seed);

}  // namespace roughcone
