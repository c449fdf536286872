#include "roughcone/run.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>

#include "roughcone/error.hpp"

namespace roughcone {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

Json without_wall_clock(const Json& report) {
  Json copy = report;
  copy.erase("wall_clock_seconds");
  return copy;
}

namespace {

template <class F>
auto guarded(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    throw ConfigError(path, e.what());
  }
}

int verdict_status(Outcome o) {
  switch (o) {
    case Outcome::Holds:
      return kExitPass;
    case Outcome::Refuted:
      return kExitFail;
    case Outcome::Inconclusive:
      return kExitInconclusive;
  }
  return kExitInternalError;
}

std::string verdict_line(const std::string& label, const Verdict& v) {
  std::string s = label + ": " + to_string(v.outcome) + " (N=" + std::to_string(v.horizon) +
                  ", window " + std::to_string(v.window) +
                  ", smallest t=" + format_double(v.smallest_scalar) + ")";
  if (v.refutation) {
    s += " witness t=" + format_double(v.refutation->t) + " i=" + std::to_string(v.refutation->i);
    if (v.refutation->j) s += " j=" + std::to_string(v.refutation->j);
  } else if (v.outcome == Outcome::Holds && !v.scalars.empty()) {
    s += " m=" + std::to_string(v.scalars.back().m) + " at smallest t";
  }
  if (v.outcome == Outcome::Inconclusive && !v.reason.empty()) s += " - " + v.reason;
  return s;
}

std::string validation_line(const ValidationReport& r) {
  std::string s = r.subject + ": " + (r.passed() ? "pass" : "FAIL");
  for (const auto& a : r.axioms) s += "  " + a.name + "=" + (a.passed ? "ok" : "fail");
  return s;
}

Json constant_or_null(const Cone& cone, const NormSpec& norm, bool star, std::uint64_t seed,
                      std::size_t trials) {
  try {
    return to_json(star ? star_constant(cone, norm, ConstantMode::ExactIfKnown, seed, trials)
                        : normal_constant(cone, norm, ConstantMode::ExactIfKnown, seed, trials));
  } catch (const NoExactConstant&) {
    return nullptr;
  }
}

void run_validate_cone(const RunConfig& c, RunResult& res) {
  const auto report = validate_cone(c.cone, c.seed, c.trials);
  res.report["results"]["validation"] = to_json(report);
  res.summary.push_back(validation_line(report));
  bool ok = report.passed();
  if (c.norm) {
    Json constants;
    for (bool star : {false, true}) {
      const char* key = star ? "star" : "normal";
      const auto empirical =
          star ? star_constant(c.cone, *c.norm, ConstantMode::Empirical, c.seed, c.trials)
               : normal_constant(c.cone, *c.norm, ConstantMode::Empirical, c.seed, c.trials);
      constants[key] = Json{{"exact", constant_or_null(c.cone, *c.norm, star, c.seed, c.trials)},
                            {"empirical", to_json(empirical)}};
      const Json& exact = constants[key]["exact"];
      res.summary.push_back(std::string(star ? "star constant k" : "normal constant K") +
                            ": exact " +
                            (exact.is_null() ? "unknown" : format_double(exact["value"].get<double>())) +
                            ", empirical lower bound " + format_double(empirical.value));
    }
    res.report["results"]["constants"] = constants;
    if (c.star_k) {
      const auto star = verify_star_condition(c.cone, *c.norm, *c.star_k, c.seed, c.trials);
      res.report["results"]["star_condition"] = to_json(star);
      res.summary.push_back(validation_line(star));
      ok = ok && star.passed();
    }
  }
  res.exit_status = ok ? kExitPass : kExitFail;
}

void run_validate_metric(const RunConfig& c, RunResult& res) {
  const auto spec = builtin_space(c.space);
  const auto sample = c.sample.empty() ? canonical_sample(spec) : c.sample;
  const auto report = validate_metric(spec, sample);
  res.report["results"]["validation"] = to_json(report);
  res.summary.push_back(validation_line(report));
  res.exit_status = report.passed() ? kExitPass : kExitFail;
}

void run_analyze(const RunConfig& c, RunResult& res) {
  const auto spec = builtin_space(c.space);
  const auto r = guarded("r", [&] { return Roughness::make(spec.cone(), c.r); });
  Json& out = res.report["results"];
  Verdict v;
  if (c.limit) {
    out["check"] = "r-convergent";
    v = is_r_convergent_to(spec, *c.sequence, *c.limit, r, c.schedule);
  } else {
    out["check"] = r.is_zero() ? "cauchy" : "r-cauchy";
    v = r.is_zero() ? is_cauchy(spec, *c.sequence, c.schedule)
                    : is_r_cauchy(spec, *c.sequence, r, c.schedule);
  }
  out["verdict"] = to_json(v);
  res.summary.push_back(verdict_line(out["check"].get<std::string>(), v));
  if (c.bound) {
    const auto b = guarded("bound", [&] {
      return is_bounded(spec, *c.sequence, c.bound->witness_horizon, c.bound->eta,
                        c.schedule.witness);
    });
    out["bound"] = to_json(b);
    res.summary.push_back("bound witness g = " + b.g.to_string() + " from the first " +
                          std::to_string(b.horizon) + " terms (horizon-limited)");
  }
  res.exit_status = verdict_status(v.outcome);
}

void run_limset(const RunConfig& c, RunResult& res) {
  const auto spec = builtin_space(c.space);
  const auto r = guarded("r", [&] { return Roughness::make(spec.cone(), c.r); });
  const auto grid = c.grid.resolve();
  const auto candidates = scan_limit_candidates(spec, *c.sequence, r, c.schedule, grid);
  Json members = Json::array();
  std::size_t inconclusive = 0;
  for (const auto& cand : candidates) {
    if (cand.verdict.outcome == Outcome::Holds) members.push_back(cand.x);
    if (cand.verdict.outcome == Outcome::Inconclusive) ++inconclusive;
  }
  Json& out = res.report["results"];
  out["candidates"] = candidates.size();
  out["members"] = members;
  out["inconclusive"] = inconclusive;
  res.summary.push_back("rough limit set: " + std::to_string(members.size()) + " of " +
                        std::to_string(candidates.size()) + " grid points" +
                        (inconclusive ? ", " + std::to_string(inconclusive) + " inconclusive" : ""));
  res.exit_status = inconclusive ? kExitInconclusive : kExitPass;
}

std::string counts_line(const SuiteReport& rep) {
  const auto& n = rep.counts;
  std::string s = to_string(rep.id) + " " + rep.mode + ": " + std::to_string(n.trials) +
                  " trials, " + std::to_string(n.confirmed) + " confirmed, " +
                  std::to_string(n.vacuous) + " vacuous, " + std::to_string(n.premise_violated) +
                  " premise-violated, " + std::to_string(n.inconclusive) + " inconclusive (" +
                  std::to_string(n.horizon_artifacts) + " horizon artifacts), " +
                  std::to_string(n.counterexamples) + " counterexamples";
  if (rep.provision_rate) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "; provision satisfied in %.1f%% of trials",
                  *rep.provision_rate * 100.0);
    s += buf;
  }
  return s;
}

void run_theorems(const RunConfig& c, RunResult& res) {
  std::vector<SuiteReport> reports;
  if (c.instances_for) {
    reports.push_back(check_instances(*c.instances_for, c.instances, c.seed));
  } else {
    for (const auto& e : c.suites) {
      SuiteConfig sc = e.config;
      sc.seed = c.seed;
      reports.push_back(c.command == Command::Search ? counterexample_search(e.id, sc)
                                                     : run_suite(e.id, sc));
    }
  }
  Json list = Json::array();
  bool counterexample = false, inconclusive = false;
  for (const auto& rep : reports) {
    list.push_back(to_json(rep));
    res.summary.push_back(counts_line(rep));
    counterexample = counterexample || rep.counts.counterexamples > 0;
    inconclusive = inconclusive || rep.counts.inconclusive > 0;
  }
  res.report["results"]["suites"] = list;
  res.exit_status = counterexample ? kExitFail : inconclusive ? kExitInconclusive : kExitPass;
}

}  // namespace

RunResult run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunResult res;
  res.report = Json{{"schema_version", kSchemaVersion},
                    {"tool_version", kToolVersion},
                    {"command", to_string(config.command)},
                    {"seed", config.seed},
                    {"config", config_to_json(config)},
                    {"results", Json::object()}};
  try {
    switch (config.command) {
      case Command::ValidateCone:
        run_validate_cone(config, res);
        break;
      case Command::ValidateMetric:
        run_validate_metric(config, res);
        break;
      case Command::Analyze:
        run_analyze(config, res);
        break;
      case Command::Limset:
        run_limset(config, res);
        break;
      case Command::Theorems:
      case Command::Search:
        run_theorems(config, res);
        break;
    }
  } catch (const InputError& e) {
    throw ConfigError(to_string(config.command), e.what());
  }
  res.report["exit_status"] = res.exit_status;
  res.report["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

void emit_trace(const RunConfig& c, std::ostream& out) {
  if (c.command != Command::Analyze && c.command != Command::Limset) {
    throw ConfigError("trace", "only analyze and limset runs produce traces");
  }
  const auto spec = builtin_space(c.space);
  const auto r = guarded("r", [&] { return Roughness::make(spec.cone(), c.r); });
  std::vector<std::string> header;

  if (c.command == Command::Limset) {
    const auto grid = c.grid.resolve();
    const auto candidates = scan_limit_candidates(spec, *c.sequence, r, c.schedule, grid);
    header.push_back("k");
    const std::size_t q = grid.empty() ? 0 : grid.front().size();
    for (std::size_t d = 0; d < q; ++d) header.push_back("x_" + std::to_string(d + 1));
    header.push_back("member");
    header.push_back("outcome");
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      std::vector<std::string> row{std::to_string(k)};
      for (double v : candidates[k].x) row.push_back(format_double(v));
      row.push_back(candidates[k].verdict.outcome == Outcome::Holds ? "1" : "0");
      row.push_back(to_string(candidates[k].verdict.outcome));
      rows.push_back(std::move(row));
    }
    write_csv(out, header, rows);
    return;
  }

  const std::size_t n = effective_horizon(*c.sequence, c.schedule);
  const auto terms = generate_prefix(*c.sequence, n);
  const std::size_t m = spec.dim();
  std::vector<VectorE> thresholds;
  for (double t : c.schedule.scalars) thresholds.push_back(r.value() + t * c.schedule.witness);

  if (c.limit) {
    header.push_back("n");
  } else {
    header.push_back("i");
    header.push_back("j");
  }
  for (std::size_t d = 0; d < m; ++d) header.push_back("d_" + std::to_string(d + 1));
  for (double t : c.schedule.scalars) header.push_back("pass_t=" + format_double(t));
  write_csv(out, header, {});

  std::vector<double> d(m);
  std::string line;
  auto row = [&](const std::string& idx) {
    line = idx;
    for (double v : d) line += "," + format_double(v);
    for (const auto& th : thresholds) line += ll(spec.cone(), d, th) ? ",1" : ",0";
    out << line << '\n';
  };
  if (c.limit) {
    for (std::size_t i = 0; i < n; ++i) {
      spec.eval_into(terms[i], *c.limit, d);
      row(std::to_string(i + 1));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        spec.eval_into(terms[i], terms[j], d);
        row(std::to_string(i + 1) + "," + std::to_string(j + 1));
      }
    }
  }
}

}  // namespace roughcone
