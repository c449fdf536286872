#include "roughcone/config.hpp"

#include <array>

#include "roughcone/error.hpp"

namespace roughcone {

namespace {

constexpr std::array<const char*, 6> kCommandNames{
    "validate-cone", "validate-metric", "analyze", "limset", "theorems", "search"};

template <class F>
auto guarded(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    throw ConfigError(path, e.what());
  }
}

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

Cone space_cone(const SpaceParams& space, const std::string& path) {
  return guarded(path, [&] { return builtin_space(space).cone(); });
}

VectorE read_roughness(ObjectReader& r, const Cone& cone) {
  const Json* v = r.get("r");
  if (!v) return VectorE::zeros(cone.dim());
  VectorE value = read_vector(*v, r.at("r"));
  guarded(r.at("r"), [&] { return Roughness::make(cone, value); });
  return value;
}

EpsilonSchedule read_schedule(ObjectReader& r, const Cone& cone) {
  if (const Json* s = r.get("schedule")) return schedule_from_json(*s, r.at("schedule"), cone);
  return guarded(r.at("schedule"), [&] { return EpsilonSchedule::default_for(cone); });
}

void require_positive(double v, const std::string& path) {
  if (!(v > 0.0)) throw ConfigError(path, "must be > 0");
}

// Suite knobs on top of the per-theorem defaults. Search runs draw their own
// spaces and sequences, so only the budget, horizon and constants apply.
SuiteConfig read_suite(ObjectReader& r, TheoremId id, bool search) {
  SuiteConfig c = SuiteConfig::defaults_for(id);
  if (search) {
    c.horizon = 1000;
    c.witness_horizon = 500;
    c.schedule.horizon = c.horizon;
  }
  if (const Json* t = r.get("trials")) {
    c.trials = read_count(*t, r.at("trials"));
    if (c.trials == 0) throw ConfigError(r.at("trials"), "must be >= 1");
  }
  const Json* h = r.get("horizon");
  if (h) {
    c.horizon = read_count(*h, r.at("horizon"));
    if (c.horizon < 4) throw ConfigError(r.at("horizon"), "must be >= 4");
    c.witness_horizon = c.horizon / 2;
  }
  if (const Json* s = r.get("star")) c.star = constant_from_json(*s, r.at("star"));
  if (const Json* n = r.get("normal")) c.normal = constant_from_json(*n, r.at("normal"));
  if (const Json* a = r.get("allow_empirical")) {
    c.allow_empirical = read_bool(*a, r.at("allow_empirical"));
  }
  if (search) {
    c.schedule.horizon = c.horizon;
    return c;
  }

  if (const Json* s = r.get("space")) {
    c.space = space_from_json(*s, r.at("space"));
    c.schedule = EpsilonSchedule::default_for(space_cone(c.space, r.at("space")));
  }
  const Cone cone = space_cone(c.space, r.at("space"));
  if (r.has("r")) {
    c.r = read_roughness(r, cone);
  } else if (c.r.dim() != cone.dim()) {
    throw ConfigError(r.at("r"), "required: the default does not match the cone dimension");
  }
  if (r.has("schedule")) c.schedule = read_schedule(r, cone);
  c.schedule.horizon = c.horizon;

  if (const Json* v = r.get("amplitude_min")) c.amplitude_min = read_number(*v, r.at("amplitude_min"));
  if (const Json* v = r.get("amplitude_max")) c.amplitude_max = read_number(*v, r.at("amplitude_max"));
  if (c.amplitude_min < 0.0 || c.amplitude_max < c.amplitude_min) {
    throw ConfigError(r.at("amplitude_min"), "need 0 <= amplitude_min <= amplitude_max");
  }
  if (const Json* v = r.get("witness_horizon")) {
    c.witness_horizon = read_count(*v, r.at("witness_horizon"));
  }
  if (id == TheoremId::T34 && (c.witness_horizon < 2 || c.witness_horizon >= c.horizon)) {
    throw ConfigError(r.at("witness_horizon"), "must satisfy 2 <= witness_horizon < horizon");
  }
  if (const Json* v = r.get("eta")) {
    c.eta = read_number(*v, r.at("eta"));
    require_positive(c.eta, r.at("eta"));
  }
  if (const Json* v = r.get("radius")) {
    c.radius = read_number(*v, r.at("radius"));
    require_positive(c.radius, r.at("radius"));
  }
  if (const Json* v = r.get("step")) {
    c.step = read_number(*v, r.at("step"));
    if (c.step < 0.0) throw ConfigError(r.at("step"), "must be >= 0");
  }
  if (const Json* v = r.get("drift_control")) c.drift_control = read_bool(*v, r.at("drift_control"));
  if (const Json* v = r.get("family")) {
    c.family = read_string(*v, r.at("family"));
    if (c.family != "decay" && c.family != "shell") {
      throw ConfigError(r.at("family"), "expected 'decay' or 'shell'");
    }
  }
  if (id == TheoremId::T35 && c.r.is_zero()) throw ConfigError(r.at("r"), "T35 requires 0 << r");
  return c;
}

Json suite_to_json(const SuiteEntry& e, bool search) {
  const SuiteConfig& c = e.config;
  Json j{{"theorem", to_string(e.id)}, {"trials", c.trials}, {"horizon", c.horizon}};
  if (c.star) j["star"] = to_json(*c.star);
  if (c.normal) j["normal"] = to_json(*c.normal);
  j["allow_empirical"] = c.allow_empirical;
  if (search) return j;
  j["space"] = to_json(c.space);
  j["r"] = to_json(c.r);
  j["schedule"] = to_json(c.schedule);
  j["amplitude_min"] = c.amplitude_min;
  j["amplitude_max"] = c.amplitude_max;
  j["witness_horizon"] = c.witness_horizon;
  j["eta"] = c.eta;
  j["radius"] = c.radius;
  j["step"] = c.step;
  j["drift_control"] = c.drift_control;
  j["family"] = c.family;
  return j;
}

std::vector<TheoremId> read_theorem_ids(const Json& j, const std::string& path) {
  const std::string name = read_string(j, path);
  if (name == "all") return all_theorems();
  return {guarded(path, [&] { return parse_theorem_id(name); })};
}

const char* const kTopLevel[] = {"schema_version", "command", "seed"};

// `r` has already consumed the top-level keys; per-theorem overrides are read
// from fresh readers so that "all" applies them to every theorem.
void read_theorem_section(const Json& doc, ObjectReader& r, RunConfig& c) {
  const bool search = c.command == Command::Search;
  if (const Json* list = r.get("suites")) {
    if (r.has("theorem")) throw ConfigError(r.at("theorem"), "give either 'theorem' or 'suites'");
    if (!list->is_array() || list->empty()) {
      throw ConfigError(r.at("suites"), "expected a nonempty array");
    }
    for (std::size_t i = 0; i < list->size(); ++i) {
      ObjectReader sr((*list)[i], index_path(r.at("suites"), i));
      SuiteEntry e;
      e.id = guarded(sr.at("theorem"), [&] {
        return parse_theorem_id(read_string(sr.require("theorem"), sr.at("theorem")));
      });
      e.config = read_suite(sr, e.id, search);
      sr.finish();
      c.suites.push_back(std::move(e));
    }
    r.finish();
    return;
  }
  const auto ids = read_theorem_ids(r.require("theorem"), r.at("theorem"));
  if (const Json* list = r.get("instances")) {
    if (search) throw ConfigError(r.at("instances"), "only the theorems command runs instances");
    if (ids.size() != 1) throw ConfigError(r.at("theorem"), "instances need a single theorem id");
    if (!list->is_array() || list->empty()) {
      throw ConfigError(r.at("instances"), "expected a nonempty array");
    }
    c.instances_for = ids.front();
    for (std::size_t i = 0; i < list->size(); ++i) {
      auto inst = instance_from_json((*list)[i], index_path(r.at("instances"), i));
      if (inst.id != ids.front()) {
        throw ConfigError(index_path(r.at("instances"), i) + ".theorem", "does not match 'theorem'");
      }
      c.instances.push_back(std::move(inst));
    }
    r.finish();
    return;
  }
  for (TheoremId id : ids) {
    ObjectReader sr(doc, "");
    for (const char* key : kTopLevel) sr.get(key);
    sr.get("theorem");
    SuiteEntry e{id, read_suite(sr, id, search)};
    sr.finish();
    c.suites.push_back(std::move(e));
  }
}

}  // namespace

std::string to_string(Command command) { return kCommandNames[static_cast<std::size_t>(command)]; }

Command parse_command(const std::string& name) {
  for (std::size_t i = 0; i < kCommandNames.size(); ++i) {
    if (name == kCommandNames[i]) return static_cast<Command>(i);
  }
  throw ConfigError("command", "unknown command '" + name + "'");
}

std::vector<Point> GridSpec::resolve() const {
  if (!points.empty()) return points;
  return linspace_grid(from, to, count);
}

RunConfig parse_config(const std::string& text, std::optional<Command> expected) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("", "syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return parse_config_json(doc, expected);
}

RunConfig parse_config_json(const Json& doc, std::optional<Command> expected) {
  ObjectReader r(doc, "");
  const Json& version = r.require("schema_version");
  if (!version.is_number_integer() || version.get<std::int64_t>() != kSchemaVersion) {
    throw ConfigError("schema_version",
                      "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  RunConfig c;
  if (const Json* cmd = r.get("command")) {
    c.command = parse_command(read_string(*cmd, "command"));
    if (expected && *expected != c.command) {
      throw ConfigError("command", "config is for '" + to_string(c.command) +
                                       "' but the subcommand is '" + to_string(*expected) + "'");
    }
  } else if (expected) {
    c.command = *expected;
  } else {
    throw ConfigError("command", "missing required key");
  }
  if (const Json* s = r.get("seed")) c.seed = read_u64(*s, "seed");

  switch (c.command) {
    case Command::ValidateCone: {
      c.cone = cone_from_json(r.require("cone"), "cone");
      if (const Json* n = r.get("norm")) {
        c.norm = norm_from_json(*n, "norm");
        guarded("norm", [&] {
          c.norm->validate(c.cone.dim());
          return 0;
        });
      }
      if (const Json* t = r.get("trials")) {
        c.trials = read_count(*t, "trials");
        if (c.trials == 0) throw ConfigError("trials", "must be >= 1");
      }
      if (const Json* k = r.get("star_k")) {
        c.star_k = read_number(*k, "star_k");
        require_positive(*c.star_k, "star_k");
        if (!c.norm) throw ConfigError("star_k", "needs a norm");
      }
      break;
    }
    case Command::ValidateMetric: {
      c.space = space_from_json(r.require("space"), "space");
      if (const Json* s = r.get("sample")) {
        c.sample = read_points(*s, "sample");
        if (c.sample.size() < 3) throw ConfigError("sample", "needs at least 3 points");
        const auto spec = builtin_space(c.space);
        for (std::size_t i = 0; i < c.sample.size(); ++i) {
          guarded(index_path("sample", i), [&] {
            spec.space().require(c.sample[i], "sample point");
            return 0;
          });
        }
      }
      break;
    }
    case Command::Analyze:
    case Command::Limset: {
      c.space = space_from_json(r.require("space"), "space");
      const auto spec = builtin_space(c.space);
      c.sequence = sequence_from_json(r.require("sequence"), "sequence");
      guarded("sequence", [&] {
        c.sequence->require_in(spec.space());
        return 0;
      });
      c.r = read_roughness(r, spec.cone());
      c.schedule = read_schedule(r, spec.cone());
      if (c.command == Command::Analyze) {
        if (const Json* l = r.get("limit")) {
          c.limit = read_point(*l, "limit");
          guarded("limit", [&] {
            spec.space().require(*c.limit, "limit");
            return 0;
          });
        }
        if (const Json* b = r.get("bound")) {
          ObjectReader br(*b, "bound");
          BoundRequest req;
          if (const Json* w = br.get("witness_horizon")) {
            req.witness_horizon = read_count(*w, "bound.witness_horizon");
          }
          if (req.witness_horizon < 2) throw ConfigError("bound.witness_horizon", "must be >= 2");
          if (const Json* e = br.get("eta")) req.eta = read_number(*e, "bound.eta");
          require_positive(req.eta, "bound.eta");
          br.finish();
          c.bound = req;
        }
      } else {
        if (spec.space().kind != PointSpace::Kind::RealVector) {
          throw ConfigError("space", "limset needs a RealVector space");
        }
        ObjectReader gr(r.require("grid"), "grid");
        if (const Json* p = gr.get("points")) {
          if (gr.has("from") || gr.has("to") || gr.has("count")) {
            throw ConfigError("grid", "give either 'points' or 'from'/'to'/'count'");
          }
          c.grid.points = read_points(*p, "grid.points");
          if (c.grid.points.empty()) throw ConfigError("grid.points", "must be nonempty");
        } else {
          c.grid.from = read_point(gr.require("from"), "grid.from");
          c.grid.to = read_point(gr.require("to"), "grid.to");
          c.grid.count = read_count(gr.require("count"), "grid.count");
          if (c.grid.count < 2) throw ConfigError("grid.count", "must be >= 2");
          if (c.grid.from.size() != c.grid.to.size()) {
            throw ConfigError("grid.to", "dimension differs from grid.from");
          }
        }
        gr.finish();
        const auto pts = c.grid.resolve();
        for (std::size_t i = 0; i < pts.size(); ++i) {
          guarded("grid", [&] {
            spec.space().require(pts[i], "grid point");
            return 0;
          });
        }
      }
      break;
    }
    case Command::Theorems:
    case Command::Search:
      read_theorem_section(doc, r, c);
      return c;
  }
  r.finish();
  return c;
}

Json config_to_json(const RunConfig& c) {
  Json j{{"schema_version", kSchemaVersion}, {"command", to_string(c.command)}, {"seed", c.seed}};
  switch (c.command) {
    case Command::ValidateCone:
      j["cone"] = to_json(c.cone);
      if (c.norm) j["norm"] = to_json(*c.norm);
      j["trials"] = c.trials;
      if (c.star_k) j["star_k"] = *c.star_k;
      break;
    case Command::ValidateMetric: {
      j["space"] = to_json(c.space);
      if (!c.sample.empty()) {
        Json pts = Json::array();
        for (const auto& p : c.sample) pts.push_back(p);
        j["sample"] = pts;
      }
      break;
    }
    case Command::Analyze:
    case Command::Limset:
      j["space"] = to_json(c.space);
      if (c.sequence) j["sequence"] = to_json(*c.sequence);
      j["r"] = to_json(c.r);
      j["schedule"] = to_json(c.schedule);
      if (c.limit) j["limit"] = *c.limit;
      if (c.bound) {
        j["bound"] = Json{{"witness_horizon", c.bound->witness_horizon}, {"eta", c.bound->eta}};
      }
      if (c.command == Command::Limset) {
        if (!c.grid.points.empty()) {
          Json pts = Json::array();
          for (const auto& p : c.grid.points) pts.push_back(p);
          j["grid"] = Json{{"points", pts}};
        } else {
          j["grid"] = Json{{"from", c.grid.from}, {"to", c.grid.to}, {"count", c.grid.count}};
        }
      }
      break;
    case Command::Theorems:
    case Command::Search:
      if (c.instances_for) {
        j["theorem"] = to_string(*c.instances_for);
        Json list = Json::array();
        for (const auto& inst : c.instances) list.push_back(to_json(inst));
        j["instances"] = list;
      } else {
        Json list = Json::array();
        for (const auto& e : c.suites) list.push_back(suite_to_json(e, c.command == Command::Search));
        j["suites"] = list;
      }
      break;
  }
  return j;
}

std::string render_config(const RunConfig& config) { return config_to_json(config).dump(2) + "\n"; }

void apply_overrides(RunConfig& c, std::optional<std::uint64_t> seed,
                     std::optional<std::size_t> horizon) {
  if (seed) c.seed = *seed;
  if (!horizon) return;
  switch (c.command) {
    case Command::ValidateCone:
    case Command::ValidateMetric:
      throw ConfigError("horizon", to_string(c.command) + " has no horizon");
    case Command::Analyze:
    case Command::Limset:
      if (*horizon < 2) throw ConfigError("horizon", "must be >= 2");
      c.schedule.horizon = *horizon;
      return;
    case Command::Theorems:
    case Command::Search:
      if (*horizon < 4) throw ConfigError("horizon", "must be >= 4");
      for (auto& e : c.suites) {
        e.config.horizon = *horizon;
        e.config.schedule.horizon = *horizon;
        e.config.witness_horizon = *horizon / 2;
      }
      for (auto& inst : c.instances) {
        inst.schedule.horizon = *horizon;
        if (inst.witness_horizon >= *horizon) inst.witness_horizon = *horizon / 2;
      }
      return;
  }
}

}  // namespace roughcone
