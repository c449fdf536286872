#include "doctest.h"
#include "roughcone/config.hpp"
#include "roughcone/error.hpp"

using namespace roughcone;

namespace {

std::string error_path(const std::string& text, std::optional<Command> cmd = std::nullopt) {
  try {
    parse_config(text, cmd);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

void check_round_trip(const std::string& text, std::optional<Command> cmd = std::nullopt) {
  const RunConfig a = parse_config(text, cmd);
  const RunConfig b = parse_config(render_config(a));
  CHECK(a == b);
  CHECK(render_config(a) == render_config(b));
}

const char* kAnalyze = R"({
  "schema_version": 1,
  "command": "analyze",
  "space": {"name": "two-component", "alpha": 1},
  "sequence": {"family": "oscillating", "a": [0], "b": [2]},
  "r": [2, 2]
})";

}  // namespace

TEST_CASE("minimal analyze config resolves with the default schedule") {
  const auto c = parse_config(kAnalyze);
  CHECK(c.command == Command::Analyze);
  CHECK(c.space.name == "two-component");
  CHECK(c.r == VectorE{2.0, 2.0});
  CHECK(c.schedule == EpsilonSchedule::default_for(Cone::orthant(2)));
  REQUIRE(c.sequence);
  CHECK(c.sequence->family_name() == "oscillating");
  CHECK(c.seed == 0);
}

TEST_CASE("field errors carry their path") {
  CHECK(error_path(R"({"schema_version": 1, "command": "analyze",
    "space": {"name": "two-component", "alpha": -1},
    "sequence": {"family": "oscillating", "a": [0], "b": [2]}})") == "space.alpha");
  CHECK(error_path(R"({"command": "analyze"})") == "schema_version");
  CHECK(error_path(R"({"schema_version": 2, "command": "analyze"})") == "schema_version");
  CHECK(error_path(R"({"schema_version": 1, "command": "analyze", "colour": 1,
    "space": {"name": "two-component"},
    "sequence": {"family": "oscillating", "a": [0], "b": [2]}})") == "colour");
  CHECK(error_path(R"({"schema_version": 1, "command": "analyze",
    "space": {"name": "moebius"},
    "sequence": {"family": "oscillating", "a": [0], "b": [2]}})") == "space.name");
  CHECK(error_path(R"({"schema_version": 1, "command": "analyze",
    "space": {"name": "two-component"},
    "sequence": {"family": "decay", "center": [0], "direction": [1], "ratio": 1.5}})") == "sequence");
  CHECK(error_path(R"({"schema_version": 1, "command": "analyze",
    "space": {"name": "two-component"},
    "sequence": {"family": "oscillating", "a": [0], "b": [2]},
    "schedule": {"scalars": [0.1, 0.5]}})") == "schedule");
  CHECK(error_path(R"({"schema_version": 1, "command": "theorems", "theorem": "T34",
    "horizon": 100, "witness_horizon": 100})") == "witness_horizon");
  CHECK(error_path(R"({"schema_version": 1, "command": "theorems", "theorem": "T35",
    "r": [0, 0]})") == "r");
  CHECK(error_path(R"({"schema_version": 1, "command": "theorems", "theorem": "T99"})") == "theorem");
  CHECK(error_path(R"({"schema_version": 1, "command": "search", "theorem": "T33",
    "amplitude_max": 3})") == "amplitude_max");
  CHECK(error_path(kAnalyze, Command::Limset) == "command");
}

TEST_CASE("syntax errors report a position") {
  try {
    parse_config("{\"schema_version\": 1,, }");
    FAIL("expected a syntax error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("byte 22") != std::string::npos);
  }
}

TEST_CASE("command may come from the subcommand") {
  const auto c = parse_config(R"({"schema_version": 1, "cone": {"kind": "orthant", "dim": 2}})",
                              Command::ValidateCone);
  CHECK(c.command == Command::ValidateCone);
  CHECK(error_path(R"({"schema_version": 1, "cone": {"kind": "orthant", "dim": 2}})") == "command");
}

TEST_CASE("round trip across commands") {
  check_round_trip(kAnalyze);
  check_round_trip(R"({"schema_version": 1, "command": "analyze", "seed": 12,
    "space": {"name": "lifted", "base": "sup", "q": 2, "witness": [0.1, 0.7],
              "norm": {"kind": "weighted-sup", "weights": [1, 3]}},
    "sequence": {"family": "bounded-walk", "seed": 18446744073709551615, "center": [0.1, 0.2],
                 "step": 0.3, "radius": 0.7},
    "limit": [0.1, 0.2], "r": [0.3, 0.30000000000000004],
    "schedule": {"witness": [1, 2], "scalars": [0.1, 0.01, 1e-300], "horizon": 77, "window": 9},
    "bound": {"witness_horizon": 10, "eta": 0.125}})");
  check_round_trip(R"({"schema_version": 1, "command": "limset",
    "space": {"name": "lifted", "q": 1},
    "sequence": {"family": "oscillating", "a": -1, "b": 1}, "r": [1, 1],
    "grid": {"from": [-2], "to": [2], "count": 41}})");
  check_round_trip(R"({"schema_version": 1, "command": "limset",
    "space": {"name": "lifted", "q": 1},
    "sequence": {"family": "osc-decay", "center": [0], "direction": [1], "base": 1, "transient": 2, "ratio": 0.3},
    "r": [1, 1], "grid": {"points": [[0], [0.5]]}})");
  check_round_trip(R"({"schema_version": 1, "command": "validate-cone", "seed": 3,
    "cone": {"kind": "product", "margin": 1e-12, "parts": [
      {"kind": "second-order", "dim": 3}, {"kind": "polyhedral", "rows": [[1, 0], [1, 1]]}]},
    "norm": {"kind": "p", "p": 1.5}, "trials": 10, "star_k": 2})");
  check_round_trip(R"({"schema_version": 1, "command": "validate-metric",
    "space": {"name": "table", "cone": {"kind": "orthant", "dim": 1},
              "table": [[[0], [1]], [[1], [0]]]},
    "sample": [[0], [1], [0]]})");
  check_round_trip(R"({"schema_version": 1, "command": "theorems", "theorem": "all", "trials": 3})");
  check_round_trip(R"({"schema_version": 1, "command": "theorems", "theorem": "T36",
    "family": "shell", "r": [0.5, 0.5], "normal": {"value": 1, "provenance": "exact-derived"}})");
  check_round_trip(R"({"schema_version": 1, "command": "search", "theorem": "T35", "trials": 9,
    "allow_empirical": true, "star": 1.2})");
}

TEST_CASE("default application is order-independent") {
  const auto a = parse_config(R"({"schema_version": 1, "command": "theorems", "theorem": "T34",
    "witness_horizon": 50, "horizon": 300})");
  const auto b = parse_config(R"({"horizon": 300, "witness_horizon": 50, "theorem": "T34",
    "command": "theorems", "schema_version": 1})");
  CHECK(a == b);
  CHECK(a.suites.at(0).config.witness_horizon == 50);
  const auto c = parse_config(R"({"schema_version": 1, "command": "theorems", "theorem": "T34",
    "horizon": 300})");
  CHECK(c.suites.at(0).config.witness_horizon == 150);
}

TEST_CASE("theorem defaults") {
  const auto c = parse_config(R"({"schema_version": 1, "command": "theorems", "theorem": "all"})");
  REQUIRE(c.suites.size() == 4);
  for (const auto& e : c.suites) {
    CHECK(e.config == SuiteConfig::defaults_for(e.id));
  }
  const auto s = parse_config(R"({"schema_version": 1, "command": "search", "theorem": "T33"})");
  CHECK(s.suites.at(0).config.horizon == 1000);
}

TEST_CASE("explicit instances") {
  TheoremInstance inst;
  inst.id = TheoremId::T33;
  inst.space = SuiteConfig::defaults_for(TheoremId::T33).space;
  inst.x = SequenceSpec::osc_decay({0.25, -1.0}, {0.6, 0.8}, 0.2, 1.0, 0.9);
  inst.limit = {0.25, -1.0};
  inst.r = VectorE{1.0, 1.0};
  inst.schedule.horizon = 300;
  const Json doc = rerun_config(inst, 42);
  const auto c = parse_config_json(doc);
  REQUIRE(c.instances.size() == 1);
  CHECK(c.instances[0] == inst);
  CHECK(c.seed == 42);
  CHECK(parse_config(render_config(c)) == c);
}

TEST_CASE("overrides") {
  auto c = parse_config(kAnalyze);
  apply_overrides(c, 5, 300);
  CHECK(c.seed == 5);
  CHECK(c.schedule.horizon == 300);
  auto t = parse_config(R"({"schema_version": 1, "command": "theorems", "theorem": "T34"})");
  apply_overrides(t, std::nullopt, 600);
  CHECK(t.suites[0].config.horizon == 600);
  CHECK(t.suites[0].config.witness_horizon == 300);
  auto v = parse_config(R"({"schema_version": 1, "command": "validate-cone",
    "cone": {"kind": "orthant", "dim": 2}})");
  CHECK_THROWS_AS(apply_overrides(v, std::nullopt, 10), ConfigError);
}
