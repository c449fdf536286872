#include "roughcone/theorems.hpp"

#include <algorithm>
#include <cmath>

#include "roughcone/error.hpp"
#include "roughcone/random.hpp"

namespace roughcone {

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T33:
      return "T33";
    case TheoremId::T34:
      return "T34";
    case TheoremId::T35:
      return "T35";
    case TheoremId::T36:
      return "T36";
  }
  return "?";
}

TheoremId parse_theorem_id(const std::string& text) {
  for (TheoremId id : all_theorems()) {
    if (to_string(id) == text) return id;
  }
  throw InputError("unknown theorem id '" + text + "' (expected T33, T34, T35 or T36)");
}

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids{TheoremId::T33, TheoremId::T34, TheoremId::T35,
                                          TheoremId::T36};
  return ids;
}

std::string to_string(PremiseStatus status) {
  switch (status) {
    case PremiseStatus::Satisfied:
      return "satisfied";
    case PremiseStatus::Violated:
      return "violated";
    case PremiseStatus::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string to_string(Category category) {
  switch (category) {
    case Category::Confirmed:
      return "confirmed";
    case Category::Vacuous:
      return "vacuous";
    case Category::PremiseViolated:
      return "premise-violated";
    case Category::Inconclusive:
      return "inconclusive";
    case Category::Counterexample:
      return "counterexample";
  }
  return "?";
}

SuiteConfig SuiteConfig::defaults_for(TheoremId id) {
  SuiteConfig c;
  c.space.name = "lifted";
  c.space.base = BaseMetric::Euclidean;
  c.space.q = 2;
  c.space.witness = VectorE{1.0, 1.0};
  c.space.cone = Cone::orthant(2);
  c.space.norm = NormSpec::euclidean();
  switch (id) {
    case TheoremId::T33:
      c.r = VectorE{1.0, 1.0};
      break;
    case TheoremId::T34:
      c.space.q = 1;
      c.r = VectorE{0.0, 0.0};
      break;
    case TheoremId::T35:
      c.space.norm = NormSpec::sup();
      c.r = VectorE{1.0, 1.0};
      break;
    case TheoremId::T36:
      c.space.norm = NormSpec::sup();
      c.r = VectorE{0.0, 0.0};
      break;
  }
  c.schedule = EpsilonSchedule::default_for(c.space.cone);
  c.schedule.horizon = c.horizon;
  return c;
}

namespace {

PremiseStatus from_outcome(Outcome o) {
  switch (o) {
    case Outcome::Holds:
      return PremiseStatus::Satisfied;
    case Outcome::Refuted:
      return PremiseStatus::Violated;
    case Outcome::Inconclusive:
      return PremiseStatus::Inconclusive;
  }
  return PremiseStatus::Inconclusive;
}

PremiseCheck verdict_premise(std::string name, Verdict v) {
  PremiseCheck c;
  c.name = std::move(name);
  c.status = from_outcome(v.outcome);
  c.verdict = std::move(v);
  return c;
}

PremiseStatus combine(const std::vector<PremiseCheck>& checks) {
  bool inconclusive = false;
  for (const auto& c : checks) {
    if (c.status == PremiseStatus::Violated) return PremiseStatus::Violated;
    if (c.status == PremiseStatus::Inconclusive) inconclusive = true;
  }
  return inconclusive ? PremiseStatus::Inconclusive : PremiseStatus::Satisfied;
}

// The premise scalars must cover t * factor for every conclusion scalar t,
// since the implication trades each epsilon for a smaller one (e.g. e/2).
EpsilonSchedule premise_schedule(const EpsilonSchedule& sched, double factor) {
  EpsilonSchedule s = sched;
  for (double t : sched.scalars) s.scalars.push_back(t * factor);
  std::sort(s.scalars.begin(), s.scalars.end(), std::greater<>());
  s.scalars.erase(std::unique(s.scalars.begin(), s.scalars.end()), s.scalars.end());
  return s;
}

// Largest rho with rho * unit <= bound in the cone order (0 for bound = 0).
double rho_equivalent(const ConeMetricSpec& spec, const VectorE& bound) {
  if (bound.is_zero()) return 0.0;
  return 1.0 / spec.cone().gauge(spec.unit_value(), bound);
}

// Smallest rho with rho * unit >= r.
double rho_cover(const ConeMetricSpec& spec, const VectorE& r) {
  const VectorE unit = spec.unit_value();
  if (!spec.cone().interior_contains(unit)) {
    throw ConfigError("space", "the shell family needs a metric unit value in int P");
  }
  return std::max(0.0, spec.cone().gauge(r, unit));
}

Point random_point(Rng& rng, std::size_t q, double half_width) {
  Point p(q);
  for (double& c : p) c = rng.uniform(-half_width, half_width);
  return p;
}

// Random direction of base length 1 under the space's scalar metric.
Point unit_direction(const ConeMetricSpec& spec, Rng& rng) {
  const std::size_t q = spec.space().size;
  Point u(q), zero(q, 0.0);
  double len = 0.0;
  while (!(len > 1e-6)) {
    for (double& c : u) c = rng.normal();
    len = spec.base_distance(u, zero);
  }
  for (double& c : u) c /= len;
  return u;
}

void require_scalar_space(const ConeMetricSpec& spec, const char* theorem) {
  bool ok = spec.is_scalar_lift() && spec.space().kind == PointSpace::Kind::RealVector;
  if (const auto* l = std::get_if<rules::Lifted>(&spec.rule())) {
    ok = ok && l->base != BaseMetric::Discrete;
  }
  if (!ok) {
    throw ConfigError("space", std::string(theorem) +
                                   " sampler needs a lifted (euclidean/sup) or two-component space");
  }
}

ConeMetricSpec build_space(const SpaceParams& params) {
  try {
    return builtin_space(params);
  } catch (const InputError& e) {
    throw ConfigError("space", e.what());
  }
}

Roughness make_roughness(const Cone& cone, const VectorE& r) {
  try {
    return Roughness::make(cone, r);
  } catch (const InputError& e) {
    throw ConfigError("r", e.what());
  }
}

void require_constants(const ConstantEstimate& star, const ConstantEstimate& normal,
                       bool allow_empirical) {
  if (allow_empirical) return;
  if (!star.exact()) {
    throw ConfigError("star", "empirical-provenance star constant refused; set allow_empirical");
  }
  if (!normal.exact()) {
    throw ConfigError("normal",
                      "empirical-provenance normal constant refused; set allow_empirical");
  }
}

ConstantEstimate resolve_constant(const std::optional<ConstantEstimate>& given, const Cone& cone,
                                  const NormSpec& norm, bool star, const char* field) {
  if (given) return *given;
  try {
    return star ? star_constant(cone, norm, ConstantMode::ExactIfKnown, 0, 1)
                : normal_constant(cone, norm, ConstantMode::ExactIfKnown, 0, 1);
  } catch (const NoExactConstant& e) {
    throw ConfigError(field, e.what());
  }
}

std::vector<Point> terms_for(const ConeMetricSpec& spec, const SequenceSpec& seq,
                             std::size_t horizon) {
  seq.require_in(spec.space());
  const std::size_t n = std::min(horizon, seq.length());
  if (n < 2) throw ConfigError("horizon", "needs at least 2 terms");
  return generate_prefix(seq, n);
}

InstanceRecord evaluate(const TheoremInstance& inst) {
  const ConeMetricSpec spec = build_space(inst.space);
  const Cone& cone = spec.cone();
  const NormSpec& norm = spec.norm();
  const EpsilonSchedule& sched = inst.schedule;
  try {
    sched.validate(cone);
  } catch (const InputError& e) {
    throw ConfigError("schedule", e.what());
  }
  const double e_norm = norm(sched.witness);

  InstanceRecord rec;
  rec.instance = inst;
  switch (inst.id) {
    case TheoremId::T33: {
      const Roughness r = make_roughness(cone, inst.r);
      const Roughness half = r.scaled(cone, 0.5);
      const auto terms = terms_for(spec, inst.x, sched.horizon);
      rec.premise_checks.push_back(verdict_premise(
          "r/2-convergent",
          r_convergent_on(spec, terms, inst.limit, half, premise_schedule(sched, 0.5))));
      rec.conclusion = r_cauchy_on(spec, terms, r, sched);
      rec.vacuous = true;
      break;
    }
    case TheoremId::T34: {
      const std::size_t n0 = inst.witness_horizon;
      const auto terms = terms_for(spec, inst.x, sched.horizon);
      if (n0 < 2 || n0 >= terms.size()) {
        throw ConfigError("witness_horizon", "must satisfy 2 <= witness horizon < horizon");
      }
      const BoundWitness bound =
          bound_on(spec, std::span(terms).first(n0), inst.eta, sched.witness);
      rec.bound = bound;
      if (inst.ball_center) {
        PremiseCheck ball{"within-ball", PremiseStatus::Satisfied, std::nullopt, ""};
        for (std::size_t k = 0; k < terms.size(); ++k) {
          double r2 = 0.0;
          for (std::size_t c = 0; c < terms[k].size(); ++c) {
            const double off = terms[k][c] - (*inst.ball_center)[c];
            r2 += off * off;
          }
          if (std::sqrt(r2) > inst.ball_radius * (1.0 + 1e-12)) {
            ball.status = PremiseStatus::Violated;
            ball.detail = "term " + std::to_string(k + 1) + " leaves the construction ball";
            break;
          }
        }
        rec.premise_checks.push_back(std::move(ball));
      }
      PremiseCheck extends{"bound-extends", PremiseStatus::Satisfied, std::nullopt, ""};
      std::vector<double> d(spec.dim()), gap(spec.dim());
      for (std::size_t i = 0; i < terms.size() && extends.status == PremiseStatus::Satisfied;
           ++i) {
        for (std::size_t j = i; j < terms.size(); ++j) {
          spec.eval_into(terms[i], terms[j], d);
          for (std::size_t k = 0; k < d.size(); ++k) gap[k] = bound.g[k] - d[k];
          if (!cone.interior_contains(gap)) {
            extends.status = PremiseStatus::Violated;
            extends.detail = "d(x_" + std::to_string(i + 1) + ", x_" + std::to_string(j + 1) +
                             ") << g fails beyond the witness horizon";
            break;
          }
        }
      }
      rec.premise_checks.push_back(std::move(extends));
      rec.conclusion = r_cauchy_on(spec, terms, Roughness::make(cone, bound.g), sched);
      rec.vacuous = false;
      break;
    }
    case TheoremId::T35: {
      require_constants(inst.star, inst.normal, inst.allow_empirical);
      const Roughness r = make_roughness(cone, inst.r);
      if (r.is_zero()) throw ConfigError("r", "T35 requires 0 << r");
      if (!inst.y) throw ConfigError("y", "T35 needs a second sequence");
      const double k = inst.star.value;
      const Roughness part = r.scaled(cone, 1.0 / (2.0 * k * k));
      const auto tx = terms_for(spec, inst.x, sched.horizon);
      const auto ty = terms_for(spec, *inst.y, sched.horizon);
      const std::size_t n = std::min(tx.size(), ty.size());
      const auto px = std::span(tx).first(n);
      const auto py = std::span(ty).first(n);
      const auto psched = premise_schedule(sched, 1.0 / (2.0 * k * inst.normal.value * e_norm));
      rec.premise_checks.push_back(
          verdict_premise("x r/(2k^2)-cauchy", r_cauchy_on(spec, px, part, psched)));
      rec.premise_checks.push_back(
          verdict_premise("y r/(2k^2)-cauchy", r_cauchy_on(spec, py, part, psched)));
      std::vector<VectorE> a;
      a.reserve(n);
      for (std::size_t i = 0; i < n; ++i) a.push_back(spec.eval(px[i], py[i]));
      rec.conclusion = norm_rough_cauchy_on(norm, a, norm(r.value()), sched);
      rec.vacuous = true;
      break;
    }
    case TheoremId::T36: {
      require_constants(inst.star, inst.normal, inst.allow_empirical);
      const Roughness r = make_roughness(cone, inst.r);
      const auto terms = terms_for(spec, inst.x, sched.horizon);
      const auto psched = premise_schedule(sched, 1.0 / (2.0 * inst.normal.value * e_norm));
      rec.premise_checks.push_back(verdict_premise("r-cauchy", r_cauchy_on(spec, terms, r, psched)));
      rec.premise_checks.push_back(verdict_premise(
          "converges", r_convergent_on(spec, terms, inst.limit, Roughness::zero(spec.dim()), psched)));
      PremiseCheck provision{"provision", PremiseStatus::Satisfied, std::nullopt, ""};
      std::vector<double> residual;
      residual.reserve(terms.size());
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const VectorE d = spec.eval(terms[i], inst.limit);
        if (provision.status == PremiseStatus::Satisfied && !leq(cone, r.value(), d)) {
          provision.status = PremiseStatus::Violated;
          provision.detail = "r <= d(x_" + std::to_string(i + 1) + ", x) fails";
        }
        residual.push_back(norm((d - r.value()).span()));
      }
      rec.provision = provision.status == PremiseStatus::Satisfied;
      rec.premise_checks.push_back(std::move(provision));
      rec.final_residual = residual.back();
      rec.conclusion = scalar_tail_below(residual, sched);
      rec.vacuous = true;
      break;
    }
  }
  rec.premises = combine(rec.premise_checks);
  return rec;
}

}  // namespace

bool reverify_refutation(const InstanceRecord& rec) {
  if (!rec.conclusion.refutation) return false;
  const auto& ref = *rec.conclusion.refutation;
  const TheoremInstance& inst = rec.instance;
  const ConeMetricSpec spec = build_space(inst.space);
  const Cone& cone = spec.cone();
  const std::size_t n = rec.conclusion.horizon;
  if (ref.i == 0 || ref.i > n || ref.j > n) return false;
  auto target = [&](const VectorE& r) { return r + ref.t * inst.schedule.witness; };
  switch (inst.id) {
    case TheoremId::T33:
    case TheoremId::T34: {
      const VectorE r = inst.id == TheoremId::T34 ? rec.bound->g : inst.r;
      const Point xi = generate(inst.x, ref.i);
      const Point xj = generate(inst.x, ref.j);
      return !ll(cone, spec.eval(xi, xj), target(r));
    }
    case TheoremId::T35: {
      const VectorE ai = spec.eval(generate(inst.x, ref.i), generate(*inst.y, ref.i));
      const VectorE aj = spec.eval(generate(inst.x, ref.j), generate(*inst.y, ref.j));
      return !(spec.norm()((ai - aj).span()) < spec.norm()(inst.r.span()) + ref.t);
    }
    case TheoremId::T36: {
      const VectorE d = spec.eval(generate(inst.x, ref.i), inst.limit);
      return !(spec.norm()((d - inst.r).span()) < ref.t);
    }
  }
  return false;
}

InstanceRecord check_instance(const TheoremInstance& instance, bool recheck) {
  InstanceRecord rec = evaluate(instance);
  switch (rec.premises) {
    case PremiseStatus::Violated:
      rec.category = rec.vacuous ? Category::Vacuous : Category::PremiseViolated;
      return rec;
    case PremiseStatus::Inconclusive:
      rec.category = Category::Inconclusive;
      return rec;
    case PremiseStatus::Satisfied:
      break;
  }
  switch (rec.conclusion.outcome) {
    case Outcome::Holds:
      rec.category = Category::Confirmed;
      return rec;
    case Outcome::Inconclusive:
      rec.category = Category::Inconclusive;
      return rec;
    case Outcome::Refuted:
      break;
  }
  if (!reverify_refutation(rec)) {
    rec.category = Category::Inconclusive;
    rec.note = "witness-not-reproduced";
    return rec;
  }
  if (recheck) {
    TheoremInstance doubled = instance;
    doubled.schedule = instance.schedule.at_horizon(2 * instance.schedule.horizon);
    const InstanceRecord again = check_instance(doubled, false);
    if (again.category != Category::Counterexample) {
      rec.category = Category::Inconclusive;
      rec.note = "horizon-artifact";
      return rec;
    }
  }
  rec.category = Category::Counterexample;
  return rec;
}

namespace {

SuiteReport finalize(TheoremId id, std::string mode, std::uint64_t seed,
                     std::vector<InstanceRecord> records) {
  SuiteReport rep;
  rep.id = id;
  rep.mode = std::move(mode);
  rep.seed = seed;
  rep.counts.trials = records.size();
  std::size_t provision_hits = 0, provision_seen = 0;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& r = records[k];
    switch (r.category) {
      case Category::Confirmed:
        ++rep.counts.confirmed;
        break;
      case Category::Vacuous:
        ++rep.counts.vacuous;
        break;
      case Category::PremiseViolated:
        ++rep.counts.premise_violated;
        break;
      case Category::Inconclusive:
        ++rep.counts.inconclusive;
        if (r.note == "horizon-artifact") ++rep.counts.horizon_artifacts;
        break;
      case Category::Counterexample:
        ++rep.counts.counterexamples;
        rep.counterexamples.push_back(k);
        break;
    }
    if (r.provision) {
      ++provision_seen;
      if (*r.provision) ++provision_hits;
    }
  }
  if (id == TheoremId::T36 && provision_seen > 0) {
    rep.provision_rate = static_cast<double>(provision_hits) / static_cast<double>(provision_seen);
  }
  rep.records = std::move(records);
  return rep;
}

EpsilonSchedule suite_schedule(const SuiteConfig& cfg, const Cone& cone) {
  EpsilonSchedule s = cfg.schedule;
  if (s.witness.dim() != cone.dim()) s.witness = cone.default_interior_witness();
  s.horizon = cfg.horizon;
  try {
    s.validate(cone);
  } catch (const InputError& e) {
    throw ConfigError("schedule", e.what());
  }
  return s;
}

void check_amplitudes(const SuiteConfig& cfg) {
  if (!(cfg.amplitude_min >= 0.0) || !(cfg.amplitude_max >= cfg.amplitude_min) ||
      !std::isfinite(cfg.amplitude_max)) {
    throw ConfigError("amplitude_min", "need 0 <= amplitude_min <= amplitude_max");
  }
}

double amplitude_fraction(const SuiteConfig& cfg, Rng& rng, std::size_t trial) {
  return trial % 4 == 0 ? cfg.amplitude_max : rng.uniform(cfg.amplitude_min, cfg.amplitude_max);
}

template <class MakeInstance>
SuiteReport run_trials(TheoremId id, const SuiteConfig& cfg, std::uint64_t stream,
                       const std::string& mode, MakeInstance make) {
  std::vector<InstanceRecord> records;
  records.reserve(cfg.trials);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = derive_seed(cfg.seed, stream, t);
    Rng rng(seed);
    InstanceRecord rec = check_instance(make(rng, t));
    rec.index = t;
    rec.seed = seed;
    records.push_back(std::move(rec));
  }
  return finalize(id, mode, cfg.seed, std::move(records));
}

}  // namespace

SuiteReport check_thm_3_3(const SuiteConfig& cfg) {
  check_amplitudes(cfg);
  const ConeMetricSpec spec = build_space(cfg.space);
  require_scalar_space(spec, "T33");
  const Roughness r = make_roughness(spec.cone(), cfg.r);
  const double rho_max = rho_equivalent(spec, r.scaled(spec.cone(), 0.5).value());
  const EpsilonSchedule sched = suite_schedule(cfg, spec.cone());
  return run_trials(TheoremId::T33, cfg, 33, "suite", [&](Rng& rng, std::size_t t) {
    TheoremInstance inst;
    inst.id = TheoremId::T33;
    inst.space = cfg.space;
    inst.r = r.value();
    inst.schedule = sched;
    const double base = amplitude_fraction(cfg, rng, t) * rho_max;
    const double transient = rng.uniform(0.0, 2.0);
    const double ratio = rng.uniform(0.5, 0.98);
    Point center = random_point(rng, spec.space().size, 5.0);
    inst.x = SequenceSpec::osc_decay(center, unit_direction(spec, rng), base, transient, ratio);
    inst.limit = std::move(center);
    return inst;
  });
}

SuiteReport check_thm_3_4(const SuiteConfig& cfg) {
  const ConeMetricSpec spec = build_space(cfg.space);
  if (spec.space().kind != PointSpace::Kind::RealVector) {
    throw ConfigError("space", "T34 sampler needs a RealVector space");
  }
  if (cfg.witness_horizon < 2 || cfg.witness_horizon >= cfg.horizon) {
    throw ConfigError("witness_horizon", "must satisfy 2 <= witness horizon < horizon");
  }
  if (!(cfg.eta > 0.0)) throw ConfigError("eta", "must be > 0");
  if (!(cfg.radius > 0.0)) throw ConfigError("radius", "must be > 0");
  if (!(cfg.step >= 0.0)) throw ConfigError("step", "must be >= 0");
  const EpsilonSchedule sched = suite_schedule(cfg, spec.cone());
  const std::size_t q = spec.space().size;
  return run_trials(TheoremId::T34, cfg, 34, "suite", [&](Rng& rng, std::size_t) {
    TheoremInstance inst;
    inst.id = TheoremId::T34;
    inst.space = cfg.space;
    inst.r = VectorE::zeros(spec.dim());
    inst.schedule = sched;
    inst.witness_horizon = cfg.witness_horizon;
    inst.eta = cfg.eta;
    Point center = random_point(rng, q, 5.0);
    if (cfg.drift_control) {
      inst.x = SequenceSpec::drift(Point(q, 0.0), Point(q, 1.0));
    } else {
      inst.x = SequenceSpec::bounded_walk(rng.bits(), center, cfg.step, cfg.radius);
      inst.ball_center = center;
      inst.ball_radius = cfg.radius;
    }
    return inst;
  });
}

SuiteReport check_thm_3_5(const SuiteConfig& cfg) {
  check_amplitudes(cfg);
  const ConeMetricSpec spec = build_space(cfg.space);
  require_scalar_space(spec, "T35");
  const ConstantEstimate star = resolve_constant(cfg.star, spec.cone(), spec.norm(), true, "star");
  const ConstantEstimate normal =
      resolve_constant(cfg.normal, spec.cone(), spec.norm(), false, "normal");
  require_constants(star, normal, cfg.allow_empirical);
  const Roughness r = make_roughness(spec.cone(), cfg.r);
  if (r.is_zero()) throw ConfigError("r", "T35 requires 0 << r");
  const Roughness part = r.scaled(spec.cone(), 1.0 / (2.0 * star.value * star.value));
  // Pair distances of an oscillation reach twice its profile.
  const double rho_max = 0.5 * rho_equivalent(spec, part.value());
  const EpsilonSchedule sched = suite_schedule(cfg, spec.cone());
  const std::size_t q = spec.space().size;
  return run_trials(TheoremId::T35, cfg, 35, "suite", [&](Rng& rng, std::size_t t) {
    TheoremInstance inst;
    inst.id = TheoremId::T35;
    inst.space = cfg.space;
    inst.r = r.value();
    inst.schedule = sched;
    inst.star = star;
    inst.normal = normal;
    inst.allow_empirical = cfg.allow_empirical;
    auto make_seq = [&] {
      const double base = amplitude_fraction(cfg, rng, t) * rho_max;
      const double transient = rng.uniform(0.0, 2.0);
      const double ratio = rng.uniform(0.5, 0.98);
      return SequenceSpec::osc_decay(random_point(rng, q, 5.0), unit_direction(spec, rng), base,
                                     transient, ratio);
    };
    inst.x = make_seq();
    inst.y = make_seq();
    return inst;
  });
}

SuiteReport check_thm_3_6(const SuiteConfig& cfg) {
  const ConeMetricSpec spec = build_space(cfg.space);
  require_scalar_space(spec, "T36");
  const ConstantEstimate normal =
      resolve_constant(cfg.normal, spec.cone(), spec.norm(), false, "normal");
  const ConstantEstimate star = cfg.star.value_or(normal);
  require_constants(star, normal, cfg.allow_empirical);
  const Roughness r = make_roughness(spec.cone(), cfg.r);
  if (cfg.family != "decay" && cfg.family != "shell") {
    throw ConfigError("family", "expected 'decay' or 'shell'");
  }
  if (cfg.family == "shell" && r.is_zero()) throw ConfigError("family", "shell needs 0 << r");
  // Slightly outside the cover so that r <= d(x_n, x) survives rounding.
  const double shell = cfg.family == "shell" ? rho_cover(spec, r.value()) * (1.0 + 1e-9) : 0.0;
  const EpsilonSchedule sched = suite_schedule(cfg, spec.cone());
  const std::size_t q = spec.space().size;
  return run_trials(TheoremId::T36, cfg, 36, "suite", [&](Rng& rng, std::size_t) {
    TheoremInstance inst;
    inst.id = TheoremId::T36;
    inst.space = cfg.space;
    inst.r = r.value();
    inst.schedule = sched;
    inst.star = star;
    inst.normal = normal;
    inst.allow_empirical = cfg.allow_empirical;
    Point center = random_point(rng, q, 5.0);
    const Point dir = unit_direction(spec, rng);
    if (cfg.family == "decay") {
      inst.x = SequenceSpec::decay(center, dir, rng.uniform(0.5, 10.0), rng.uniform(0.5, 0.98));
    } else {
      inst.x = SequenceSpec::osc_decay(center, dir, shell, shell, 0.5);
    }
    inst.limit = std::move(center);
    return inst;
  });
}

SuiteReport run_suite(TheoremId id, const SuiteConfig& config) {
  switch (id) {
    case TheoremId::T33:
      return check_thm_3_3(config);
    case TheoremId::T34:
      return check_thm_3_4(config);
    case TheoremId::T35:
      return check_thm_3_5(config);
    case TheoremId::T36:
      return check_thm_3_6(config);
  }
  throw InputError("unknown theorem");
}

namespace {

SpaceParams random_space(Rng& rng, bool sup_norm) {
  SpaceParams p;
  p.cone = Cone::orthant(2);
  p.norm = sup_norm || rng.chance(0.5) ? NormSpec::sup() : NormSpec::euclidean();
  if (rng.chance(0.3)) {
    p.name = "two-component";
    p.q = 1;
    p.alpha = rng.uniform(0.0, 3.0);
  } else {
    p.name = "lifted";
    p.base = rng.chance(0.5) ? BaseMetric::Euclidean : BaseMetric::Sup;
    p.q = 1 + rng.below(2);
    p.witness = VectorE{1.0, rng.uniform(0.5, 2.0)};
  }
  return p;
}

VectorE random_r(Rng& rng, bool allow_zero) {
  if (allow_zero && rng.chance(0.25)) return VectorE{0.0, 0.0};
  return VectorE{rng.uniform(0.1, 3.0), rng.uniform(0.1, 3.0)};
}

struct RandomSequence {
  SequenceSpec seq;
  Point anchor;
};

RandomSequence random_sequence(Rng& rng, std::size_t q, bool allow_drift) {
  const std::uint64_t kind = rng.below(allow_drift ? 5 : 4);
  Point center = random_point(rng, q, 3.0);
  Point dir(q);
  for (double& c : dir) c = rng.normal();
  switch (kind) {
    case 0: {
      Point b = random_point(rng, q, 3.0);
      Point mid(q);
      for (std::size_t i = 0; i < q; ++i) mid[i] = 0.5 * (center[i] + b[i]);
      return {SequenceSpec::oscillating(center, b), rng.chance(0.5) ? mid : center};
    }
    case 1:
      return {SequenceSpec::decay(center, dir, rng.uniform(0.0, 5.0), rng.uniform(0.3, 0.99)),
              center};
    case 2:
      return {SequenceSpec::osc_decay(center, dir, rng.uniform(0.0, 3.0), rng.uniform(0.0, 3.0),
                                      rng.uniform(0.3, 0.99)),
              center};
    case 3:
      return {SequenceSpec::bounded_walk(rng.bits(), center, rng.uniform(0.05, 1.0),
                                         rng.uniform(0.2, 3.0)),
              center};
    default: {
      Point v(q);
      for (double& c : v) c = rng.uniform(-0.01, 0.01);
      return {SequenceSpec::drift(center, v), center};
    }
  }
}

}  // namespace

SuiteReport counterexample_search(TheoremId id, const SuiteConfig& cfg) {
  if (cfg.trials == 0) throw ConfigError("trials", "search budget must be >= 1");
  std::optional<ConstantEstimate> star = cfg.star, normal = cfg.normal;
  if (id == TheoremId::T35 || id == TheoremId::T36) {
    const Cone orthant = Cone::orthant(2);
    if (!star) star = resolve_constant(std::nullopt, orthant, NormSpec::sup(), true, "star");
    if (!normal) normal = resolve_constant(std::nullopt, orthant, NormSpec::sup(), false, "normal");
    require_constants(*star, *normal, cfg.allow_empirical);
  }
  const std::uint64_t stream = 100 + static_cast<std::uint64_t>(id);
  return run_trials(id, cfg, stream, "search", [&](Rng& rng, std::size_t) {
    TheoremInstance inst;
    inst.id = id;
    const bool exact_norm = id == TheoremId::T35 || id == TheoremId::T36;
    inst.space = random_space(rng, exact_norm);
    inst.r = random_r(rng, id != TheoremId::T35);
    inst.schedule = EpsilonSchedule::default_for(inst.space.cone);
    inst.schedule.horizon = cfg.horizon;
    auto first = random_sequence(rng, inst.space.q, id == TheoremId::T34);
    inst.x = first.seq;
    inst.limit = first.anchor;
    if (id == TheoremId::T34) {
      inst.witness_horizon = std::max<std::size_t>(2, cfg.horizon / 2);
      inst.eta = rng.uniform(0.01, 0.5);
    }
    if (id == TheoremId::T35) inst.y = random_sequence(rng, inst.space.q, false).seq;
    if (star) inst.star = *star;
    if (normal) inst.normal = *normal;
    inst.allow_empirical = cfg.allow_empirical;
    return inst;
  });
}

SuiteReport check_instances(TheoremId id, const std::vector<TheoremInstance>& instances,
                            std::uint64_t seed) {
  std::vector<InstanceRecord> records;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    if (instances[k].id != id) throw ConfigError("instances", "instance theorem id mismatch");
    InstanceRecord rec = check_instance(instances[k]);
    rec.index = k;
    rec.seed = seed;
    records.push_back(std::move(rec));
  }
  return finalize(id, "instances", seed, std::move(records));
}

}  // namespace roughcone
