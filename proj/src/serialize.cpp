#include "roughcone/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "roughcone/error.hpp"

namespace roughcone {

ObjectReader::ObjectReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
  if (!j_.is_object()) throw ConfigError(path_, "expected an object");
}

const Json* ObjectReader::get(const std::string& key) {
  auto it = j_.find(key);
  if (it == j_.end()) return nullptr;
  used_.push_back(key);
  return &*it;
}

const Json& ObjectReader::require(const std::string& key) {
  const Json* v = get(key);
  if (!v) throw ConfigError(at(key), "missing required key");
  return *v;
}

bool ObjectReader::has(const std::string& key) const { return j_.contains(key); }

std::string ObjectReader::at(const std::string& key) const {
  return path_.empty() ? key : path_ + "." + key;
}

void ObjectReader::finish() const {
  for (auto it = j_.begin(); it != j_.end(); ++it) {
    if (std::find(used_.begin(), used_.end(), it.key()) == used_.end()) {
      throw ConfigError(at(it.key()), "unknown key");
    }
  }
}

double read_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
  return v;
}

std::size_t read_count(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    throw ConfigError(path, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

std::uint64_t read_u64(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    throw ConfigError(path, "expected an unsigned 64-bit integer");
  }
  return j.get<std::uint64_t>();
}

bool read_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
  return j.get<bool>();
}

std::string read_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

Point read_point(const Json& j, const std::string& path) {
  if (j.is_number()) return {read_number(j, path)};
  if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
  Point p;
  for (std::size_t i = 0; i < j.size(); ++i) {
    p.push_back(read_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return p;
}

std::vector<Point> read_points(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(read_point(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

VectorE read_vector(const Json& j, const std::string& path) {
  Point p = read_point(j, path);
  if (p.empty()) throw ConfigError(path, "vector needs at least one coordinate");
  return VectorE(std::move(p));
}

namespace {

// Runs a library constructor, turning InputError into a ConfigError at `path`.
template <class F>
auto guarded(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const InputError& e) {
    throw ConfigError(path, e.what());
  }
}

Json points_json(const std::vector<Point>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(p);
  return a;
}

std::string provenance_name(Provenance p) {
  return p == Provenance::ExactDerived ? "exact-derived" : "empirical-lower-bound";
}

}  // namespace

Json to_json(const VectorE& v) { return Json(v.coords()); }

Json to_json(const NormSpec& norm) {
  Json j{{"kind", norm.name()}};
  if (norm.kind == NormKind::P) j["p"] = norm.p;
  if (norm.kind == NormKind::WeightedSup) j["weights"] = norm.weights;
  return j;
}

NormSpec norm_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "euclidean") return NormSpec::euclidean();
    if (name == "sup") return NormSpec::sup();
    throw ConfigError(path, "unknown norm '" + name + "'");
  }
  ObjectReader r(j, path);
  const std::string kind = read_string(r.require("kind"), r.at("kind"));
  NormSpec n;
  if (kind == "euclidean") {
    n = NormSpec::euclidean();
  } else if (kind == "sup") {
    n = NormSpec::sup();
  } else if (kind == "p") {
    const double p = read_number(r.require("p"), r.at("p"));
    n = guarded(r.at("p"), [&] { return NormSpec::p_norm(p); });
  } else if (kind == "weighted-sup") {
    const Point w = read_point(r.require("weights"), r.at("weights"));
    n = guarded(r.at("weights"), [&] { return NormSpec::weighted_sup(w); });
  } else {
    throw ConfigError(r.at("kind"), "unknown norm kind '" + kind + "'");
  }
  r.finish();
  return n;
}

Json to_json(const Cone& cone) {
  Json j{{"kind", cone.kind_name()}};
  std::visit(
      [&](const auto& rep) {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, cones::Orthant>) {
          j["dim"] = rep.dim;
        } else if constexpr (std::is_same_v<T, cones::Polyhedral>) {
          j["rows"] = rep.rows;
        } else if constexpr (std::is_same_v<T, cones::SecondOrder>) {
          j["dim"] = rep.dim;
        } else {
          Json parts = Json::array();
          for (const auto& p : rep.parts) parts.push_back(to_json(p));
          j["parts"] = parts;
        }
      },
      cone.representation());
  j["margin"] = cone.margin();
  return j;
}

Cone cone_from_json(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  const std::string kind = read_string(r.require("kind"), r.at("kind"));
  double margin = 0.0;
  if (const Json* m = r.get("margin")) {
    margin = read_number(*m, r.at("margin"));
    if (margin < 0.0) throw ConfigError(r.at("margin"), "must be >= 0");
  }
  Cone c = [&] {
    if (kind == "orthant" || kind == "second-order") {
      const std::size_t dim = read_count(r.require("dim"), r.at("dim"));
      return guarded(r.at("dim"), [&] {
        return kind == "orthant" ? Cone::orthant(dim, margin) : Cone::second_order(dim, margin);
      });
    }
    if (kind == "polyhedral") {
      const auto rows = read_points(r.require("rows"), r.at("rows"));
      return guarded(r.at("rows"), [&] { return Cone::polyhedral(rows, margin); });
    }
    if (kind == "product") {
      const Json& parts = r.require("parts");
      if (!parts.is_array()) throw ConfigError(r.at("parts"), "expected an array of cones");
      std::vector<Cone> cs;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        cs.push_back(cone_from_json(parts[i], r.at("parts") + "[" + std::to_string(i) + "]"));
      }
      return guarded(r.at("parts"), [&] { return Cone::product(cs, margin); });
    }
    throw ConfigError(r.at("kind"), "unknown cone kind '" + kind + "'");
  }();
  r.finish();
  return c;
}

Json to_json(const SpaceParams& s) {
  Json j{{"name", s.name}};
  if (s.name == "lifted") {
    j["base"] = to_string(s.base);
    j["q"] = s.q;
    j["witness"] = to_json(s.witness);
    j["cone"] = to_json(s.cone);
  } else if (s.name == "two-component") {
    j["alpha"] = s.alpha;
    if (!(s.cone == Cone::orthant(2))) j["cone"] = to_json(s.cone);
  } else {
    Json rows = Json::array();
    for (const auto& row : s.table) {
      Json jr = Json::array();
      for (const auto& v : row) jr.push_back(to_json(v));
      rows.push_back(jr);
    }
    j["table"] = rows;
    j["cone"] = to_json(s.cone);
  }
  j["norm"] = to_json(s.norm);
  return j;
}

SpaceParams space_from_json(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  SpaceParams s;
  s.name = read_string(r.require("name"), r.at("name"));
  if (s.name == "lifted") {
    if (const Json* b = r.get("base")) {
      const std::string base = read_string(*b, r.at("base"));
      if (base == "euclidean") s.base = BaseMetric::Euclidean;
      else if (base == "sup") s.base = BaseMetric::Sup;
      else if (base == "discrete") s.base = BaseMetric::Discrete;
      else throw ConfigError(r.at("base"), "unknown base metric '" + base + "'");
    }
    if (const Json* q = r.get("q")) {
      s.q = read_count(*q, r.at("q"));
      if (s.q == 0) throw ConfigError(r.at("q"), "must be >= 1");
    }
    if (const Json* w = r.get("witness")) s.witness = read_vector(*w, r.at("witness"));
  } else if (s.name == "two-component") {
    if (const Json* a = r.get("alpha")) {
      s.alpha = read_number(*a, r.at("alpha"));
      if (s.alpha < 0.0) throw ConfigError(r.at("alpha"), "must be >= 0");
    }
  } else if (s.name == "table") {
    const Json& t = r.require("table");
    if (!t.is_array()) throw ConfigError(r.at("table"), "expected a square matrix of vectors");
    for (std::size_t i = 0; i < t.size(); ++i) {
      const std::string rp = r.at("table") + "[" + std::to_string(i) + "]";
      if (!t[i].is_array()) throw ConfigError(rp, "expected a row of vectors");
      std::vector<VectorE> row;
      for (std::size_t k = 0; k < t[i].size(); ++k) {
        row.push_back(read_vector(t[i][k], rp + "[" + std::to_string(k) + "]"));
      }
      s.table.push_back(std::move(row));
    }
  } else {
    throw ConfigError(r.at("name"), "unknown built-in space '" + s.name + "'");
  }
  if (const Json* c = r.get("cone")) s.cone = cone_from_json(*c, r.at("cone"));
  if (const Json* n = r.get("norm")) s.norm = norm_from_json(*n, r.at("norm"));
  r.finish();
  // Resolve eagerly so invalid parameters are reported against this path.
  guarded(path, [&] { return builtin_space(s); });
  return s;
}

Json to_json(const SequenceSpec& seq) {
  Json j{{"family", seq.family_name()}};
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, families::Oscillating>) {
          j["a"] = f.a;
          j["b"] = f.b;
        } else if constexpr (std::is_same_v<T, families::Decay>) {
          j["center"] = f.center;
          j["direction"] = f.direction;
          j["amplitude"] = f.amplitude;
          j["ratio"] = f.ratio;
        } else if constexpr (std::is_same_v<T, families::OscDecay>) {
          j["center"] = f.center;
          j["direction"] = f.direction;
          j["base"] = f.base;
          j["transient"] = f.transient;
          j["ratio"] = f.ratio;
        } else if constexpr (std::is_same_v<T, families::BoundedWalk>) {
          j["seed"] = f.seed;
          j["center"] = f.center;
          j["step"] = f.step;
          j["radius"] = f.radius;
        } else if constexpr (std::is_same_v<T, families::Drift>) {
          j["start"] = f.start;
          j["velocity"] = f.velocity;
        } else {
          j["points"] = points_json(f.points);
        }
      },
      seq.family());
  return j;
}

SequenceSpec sequence_from_json(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  const std::string family = read_string(r.require("family"), r.at("family"));
  auto pt = [&](const char* key) { return read_point(r.require(key), r.at(key)); };
  auto num = [&](const char* key, double def) {
    const Json* v = r.get(key);
    return v ? read_number(*v, r.at(key)) : def;
  };
  SequenceSpec::Family f = families::Table{};
  if (family == "oscillating") {
    f = families::Oscillating{pt("a"), pt("b")};
  } else if (family == "decay") {
    families::Decay d{pt("center"), pt("direction")};
    d.amplitude = num("amplitude", 1.0);
    d.ratio = num("ratio", 0.5);
    f = d;
  } else if (family == "osc-decay") {
    families::OscDecay d{pt("center"), pt("direction")};
    d.base = num("base", 0.0);
    d.transient = num("transient", 1.0);
    d.ratio = num("ratio", 0.5);
    f = d;
  } else if (family == "bounded-walk") {
    families::BoundedWalk w;
    if (const Json* s = r.get("seed")) w.seed = read_u64(*s, r.at("seed"));
    w.center = pt("center");
    w.step = num("step", 0.5);
    w.radius = num("radius", 1.0);
    f = w;
  } else if (family == "drift") {
    f = families::Drift{pt("start"), pt("velocity")};
  } else if (family == "table") {
    f = families::Table{read_points(r.require("points"), r.at("points"))};
  } else {
    throw ConfigError(r.at("family"), "unknown sequence family '" + family + "'");
  }
  r.finish();
  return guarded(path, [&] { return SequenceSpec(f); });
}

Json to_json(const EpsilonSchedule& s) {
  return Json{{"witness", to_json(s.witness)},
              {"scalars", s.scalars},
              {"horizon", s.horizon},
              {"window", s.window}};
}

EpsilonSchedule schedule_from_json(const Json& j, const std::string& path, const Cone& cone) {
  EpsilonSchedule s = guarded(path, [&] { return EpsilonSchedule::default_for(cone); });
  ObjectReader r(j, path);
  if (const Json* w = r.get("witness")) s.witness = read_vector(*w, r.at("witness"));
  if (const Json* t = r.get("scalars")) {
    s.scalars = read_point(*t, r.at("scalars"));
    if (s.scalars.empty()) throw ConfigError(r.at("scalars"), "needs at least one scalar");
  }
  if (const Json* h = r.get("horizon")) s.horizon = read_count(*h, r.at("horizon"));
  if (const Json* w = r.get("window")) s.window = read_count(*w, r.at("window"));
  r.finish();
  guarded(path, [&] {
    s.validate(cone);
    return 0;
  });
  return s;
}

Json to_json(const ConstantEstimate& c) {
  return Json{{"value", c.value},
              {"provenance", provenance_name(c.provenance)},
              {"samples", c.samples}};
}

ConstantEstimate constant_from_json(const Json& j, const std::string& path) {
  ConstantEstimate c;
  if (j.is_number()) {
    c.value = read_number(j, path);
    c.provenance = Provenance::EmpiricalLowerBound;
  } else {
    ObjectReader r(j, path);
    c.value = read_number(r.require("value"), r.at("value"));
    const std::string prov = read_string(r.require("provenance"), r.at("provenance"));
    if (prov == "exact-derived") c.provenance = Provenance::ExactDerived;
    else if (prov == "empirical-lower-bound") c.provenance = Provenance::EmpiricalLowerBound;
    else throw ConfigError(r.at("provenance"), "unknown provenance '" + prov + "'");
    if (const Json* s = r.get("samples")) c.samples = read_count(*s, r.at("samples"));
    r.finish();
  }
  if (!(c.value > 0.0)) throw ConfigError(path, "constant must be > 0");
  return c;
}

Json to_json(const TheoremInstance& inst) {
  Json j{{"theorem", to_string(inst.id)},
         {"space", to_json(inst.space)},
         {"x", to_json(inst.x)}};
  if (inst.y) j["y"] = to_json(*inst.y);
  j["limit"] = inst.limit;
  j["r"] = to_json(inst.r);
  j["schedule"] = to_json(inst.schedule);
  j["witness_horizon"] = inst.witness_horizon;
  j["eta"] = inst.eta;
  if (inst.ball_center) j["ball_center"] = *inst.ball_center;
  j["ball_radius"] = inst.ball_radius;
  j["star"] = to_json(inst.star);
  j["normal"] = to_json(inst.normal);
  j["allow_empirical"] = inst.allow_empirical;
  return j;
}

TheoremInstance instance_from_json(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  TheoremInstance inst;
  inst.id = guarded(r.at("theorem"),
                    [&] { return parse_theorem_id(read_string(r.require("theorem"), r.at("theorem"))); });
  inst.space = space_from_json(r.require("space"), r.at("space"));
  const Cone& cone = inst.space.cone;
  inst.x = sequence_from_json(r.require("x"), r.at("x"));
  if (const Json* y = r.get("y")) inst.y = sequence_from_json(*y, r.at("y"));
  if (const Json* l = r.get("limit")) inst.limit = read_point(*l, r.at("limit"));
  if (const Json* v = r.get("r")) inst.r = read_vector(*v, r.at("r"));
  else inst.r = VectorE::zeros(cone.dim());
  if (const Json* s = r.get("schedule")) inst.schedule = schedule_from_json(*s, r.at("schedule"), cone);
  else inst.schedule = EpsilonSchedule::default_for(cone);
  if (const Json* w = r.get("witness_horizon")) inst.witness_horizon = read_count(*w, r.at("witness_horizon"));
  if (const Json* e = r.get("eta")) inst.eta = read_number(*e, r.at("eta"));
  if (const Json* b = r.get("ball_center")) inst.ball_center = read_point(*b, r.at("ball_center"));
  if (const Json* b = r.get("ball_radius")) inst.ball_radius = read_number(*b, r.at("ball_radius"));
  if (const Json* s = r.get("star")) inst.star = constant_from_json(*s, r.at("star"));
  if (const Json* n = r.get("normal")) inst.normal = constant_from_json(*n, r.at("normal"));
  if (const Json* a = r.get("allow_empirical")) inst.allow_empirical = read_bool(*a, r.at("allow_empirical"));
  r.finish();
  return inst;
}

Json to_json(const ValidationReport& report) {
  Json axioms = Json::array();
  for (const auto& a : report.axioms) {
    Json w = Json::array();
    for (const auto& v : a.witness) w.push_back(to_json(v));
    axioms.push_back(Json{{"name", a.name},
                          {"passed", a.passed},
                          {"sampled", a.sampled},
                          {"checks", a.checks},
                          {"detail", a.detail},
                          {"witness", w}});
  }
  return Json{{"subject", report.subject}, {"passed", report.passed()}, {"axioms", axioms}};
}

Json to_json(const NormalityInfo& info) {
  return Json{{"normal", to_json(info.normal)}, {"star", to_json(info.star)}};
}

Json to_json(const Verdict& v) {
  Json scalars = Json::array();
  for (const auto& s : v.scalars) {
    scalars.push_back(Json{{"t", s.t},
                           {"outcome", to_string(s.outcome)},
                           {"m", s.m},
                           {"last_violation", s.last_violation}});
  }
  Json j{{"outcome", to_string(v.outcome)},
         {"horizon", v.horizon},
         {"window", v.window},
         {"smallest_scalar", v.smallest_scalar},
         {"reason", v.reason},
         {"scalars", scalars}};
  if (v.refutation) {
    j["refutation"] = Json{{"t", v.refutation->t},
                           {"i", v.refutation->i},
                           {"j", v.refutation->j},
                           {"explanation", v.refutation->explanation}};
  } else {
    j["refutation"] = nullptr;
  }
  return j;
}

Json to_json(const BoundWitness& b) {
  return Json{{"g", to_json(b.g)},         {"s", to_json(b.s)},
              {"lift", b.lift},            {"horizon", b.horizon},
              {"eta", b.eta},              {"horizon_limited", b.horizon_limited}};
}

Json to_json(const PremiseCheck& c) {
  Json j{{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}};
  j["verdict"] = c.verdict ? to_json(*c.verdict) : Json(nullptr);
  return j;
}

Json to_json(const InstanceRecord& rec) {
  Json premises = Json::array();
  for (const auto& c : rec.premise_checks) premises.push_back(to_json(c));
  Json j{{"index", rec.index},
         {"seed", rec.seed},
         {"category", to_string(rec.category)},
         {"premises", to_string(rec.premises)},
         {"vacuous", rec.category == Category::Vacuous},
         {"note", rec.note},
         {"premise_checks", premises},
         {"conclusion", to_json(rec.conclusion)}};
  if (rec.provision) j["provision"] = *rec.provision;
  if (rec.final_residual) j["final_residual"] = *rec.final_residual;
  if (rec.bound) j["bound"] = to_json(*rec.bound);
  j["instance"] = to_json(rec.instance);
  return j;
}

Json to_json(const SuiteCounts& c) {
  return Json{{"trials", c.trials},
              {"confirmed", c.confirmed},
              {"vacuous", c.vacuous},
              {"premise_violated", c.premise_violated},
              {"inconclusive", c.inconclusive},
              {"horizon_artifacts", c.horizon_artifacts},
              {"counterexamples", c.counterexamples}};
}

Json to_json(const SuiteReport& rep) {
  Json j{{"theorem", to_string(rep.id)},
         {"mode", rep.mode},
         {"seed", rep.seed},
         {"counts", to_json(rep.counts)}};
  j["provision_rate"] = rep.provision_rate ? Json(*rep.provision_rate) : Json(nullptr);
  Json ces = Json::array();
  for (std::size_t k : rep.counterexamples) {
    const auto& rec = rep.records.at(k);
    ces.push_back(Json{{"index", k},
                       {"refutation", to_json(rec.conclusion)["refutation"]},
                       {"rerun_config", rerun_config(rec.instance, rec.seed)}});
  }
  j["counterexamples"] = ces;
  Json records = Json::array();
  for (const auto& r : rep.records) records.push_back(to_json(r));
  j["records"] = records;
  return j;
}

Json rerun_config(const TheoremInstance& inst, std::uint64_t seed) {
  return Json{{"schema_version", kSchemaVersion},
              {"command", "theorems"},
              {"seed", seed},
              {"theorem", to_string(inst.id)},
              {"instances", Json::array({to_json(inst)})}};
}

}  // namespace roughcone
