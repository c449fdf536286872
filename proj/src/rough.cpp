#include "roughcone/rough.hpp"

#include <algorithm>
#include <cmath>

#include "roughcone/error.hpp"

namespace roughcone {

Roughness Roughness::make(const Cone& cone, VectorE value) {
  require_same_dim(cone.dim(), value.dim(), "roughness");
  if (value.is_zero()) return Roughness(std::move(value), Class::Zero);
  if (cone.interior_contains(value)) return Roughness(std::move(value), Class::Interior);
  throw InputError("roughness " + value.to_string() + " is neither 0 nor in int P");
}

Roughness Roughness::zero(std::size_t dim) { return Roughness(VectorE::zeros(dim), Class::Zero); }

Roughness Roughness::scaled(const Cone& cone, double s) const { return make(cone, value_ * s); }

std::vector<double> EpsilonSchedule::default_scalars() {
  std::vector<double> t;
  for (int j = 0; j <= 12; ++j) t.push_back(std::ldexp(1.0, -j));
  return t;
}

EpsilonSchedule EpsilonSchedule::default_for(const Cone& cone) {
  return {cone.default_interior_witness(), default_scalars(), 2000, 0};
}

void EpsilonSchedule::validate(const Cone& cone) const {
  require_same_dim(cone.dim(), witness.dim(), "schedule witness");
  if (!cone.interior_contains(witness)) {
    throw InputError("schedule witness " + witness.to_string() + " must lie in int P");
  }
  if (scalars.empty()) throw InputError("schedule needs at least one scalar");
  for (std::size_t k = 0; k < scalars.size(); ++k) {
    if (!(scalars[k] > 0.0) || !std::isfinite(scalars[k])) {
      throw InputError("schedule scalars must be positive");
    }
    if (k > 0 && !(scalars[k] < scalars[k - 1])) {
      throw InputError("schedule scalars must be strictly decreasing");
    }
  }
  if (horizon < 2) throw InputError("schedule horizon must be >= 2");
}

namespace {

std::size_t window_for(std::size_t explicit_window, std::size_t n) {
  const std::size_t w = explicit_window == 0 ? std::max<std::size_t>(2, n / 10) : explicit_window;
  return std::min(w, n);
}

}  // namespace

std::size_t EpsilonSchedule::stability_window() const noexcept {
  return window_for(window, horizon);
}

EpsilonSchedule EpsilonSchedule::at_horizon(std::size_t n) const {
  EpsilonSchedule s = *this;
  s.horizon = n;
  return s;
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Holds:
      return "holds";
    case Outcome::Refuted:
      return "refuted";
    case Outcome::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

// Finds, for every scalar index p, the largest violating index (the smaller
// index of a violating pair when kPairs). Violations are monotone in p: a
// failure at p implies a failure at every later (smaller) scalar, so each
// pair is usually probed once, at the smallest unresolved scalar.
//
// Probe interface: load(i, j) then fails(p).
template <bool kPairs, class Probe>
Verdict tail_verdict(std::size_t n, std::span<const double> scalars, std::size_t window,
                     Probe& probe, const std::string& claim) {
  const std::size_t count = scalars.size();
  std::vector<std::size_t> last(count, 0), partner(count, 0);
  std::size_t unresolved = count;
  for (std::size_t i = n; i >= 1 && unresolved > 0; --i) {
    const std::size_t j_end = kPairs ? n : i;
    for (std::size_t j = i; j <= j_end && unresolved > 0; ++j) {
      probe.load(i, j);
      if (!probe.fails(unresolved - 1)) continue;
      std::size_t lo = 0, hi = unresolved - 1;
      while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (probe.fails(mid)) hi = mid;
        else lo = mid + 1;
      }
      for (std::size_t p = lo; p < unresolved; ++p) {
        last[p] = i;
        partner[p] = j;
      }
      unresolved = lo;
    }
  }

  auto any_violation_up_to = [&](std::size_t limit, std::size_t p) -> bool {
    for (std::size_t i = limit; i >= 1; --i) {
      const std::size_t j_end = kPairs ? n : i;
      for (std::size_t j = i; j <= j_end; ++j) {
        probe.load(i, j);
        if (probe.fails(p)) return true;
      }
    }
    return false;
  };

  Verdict v;
  v.horizon = n;
  v.window = window;
  v.smallest_scalar = scalars.back();
  bool early_known = false;
  std::optional<std::size_t> first_refuted, first_inconclusive;
  for (std::size_t p = 0; p < count; ++p) {
    ScalarResult res{scalars[p], Outcome::Holds, last[p] + 1, last[p]};
    if (n - last[p] < window) {
      res.m = 0;
      if (!early_known && n > window) early_known = any_violation_up_to(n - window, p);
      res.outcome = early_known ? Outcome::Refuted : Outcome::Inconclusive;
      if (res.outcome == Outcome::Refuted && !first_refuted) first_refuted = p;
      if (res.outcome == Outcome::Inconclusive && !first_inconclusive) first_inconclusive = p;
    }
    v.scalars.push_back(res);
  }

  if (first_refuted) {
    const std::size_t p = *first_refuted;
    std::size_t wi = last[p], wj = partner[p];
    probe.load(wi, wj);
    if (!probe.fails(p)) {
      // Inferred from a neighbouring scalar; find a directly failing index.
      wi = wj = 0;
      for (std::size_t i = n; i >= 1 && wi == 0; --i) {
        const std::size_t j_end = kPairs ? n : i;
        for (std::size_t j = i; j <= j_end; ++j) {
          probe.load(i, j);
          if (probe.fails(p)) {
            wi = i;
            wj = j;
            break;
          }
        }
      }
    }
    v.outcome = Outcome::Refuted;
    Refutation ref;
    ref.t = scalars[p];
    ref.i = wi;
    ref.j = kPairs ? wj : 0;
    ref.explanation = claim + " fails at t = " + std::to_string(scalars[p]) +
                      "; violations persist across the last " + std::to_string(window) +
                      " indices";
    v.refutation = std::move(ref);
  } else if (first_inconclusive) {
    v.outcome = Outcome::Inconclusive;
    v.reason = "violations of " + claim + " at t = " +
               std::to_string(scalars[*first_inconclusive]) + " occur only within the last " +
               std::to_string(window) + " indices";
  }
  return v;
}

// Targets r + t_p * e for every scalar.
std::vector<std::vector<double>> targets(const Roughness& r, const EpsilonSchedule& sched) {
  std::vector<std::vector<double>> out;
  for (double t : sched.scalars) {
    std::vector<double> v(r.value().dim());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = r.value()[k] + t * sched.witness[k];
    out.push_back(std::move(v));
  }
  return out;
}

class ConeProbe {
 public:
  ConeProbe(const ConeMetricSpec& spec, std::span<const Point> terms,
            std::optional<std::span<const double>> anchor, const Roughness& r,
            const EpsilonSchedule& sched)
      : spec_(spec),
        terms_(terms),
        anchor_(anchor),
        targets_(targets(r, sched)),
        d_(spec.dim()),
        diff_(spec.dim()) {}

  void load(std::size_t i, std::size_t j) {
    if (anchor_) spec_.eval_into(terms_[i - 1], *anchor_, d_);
    else spec_.eval_into(terms_[i - 1], terms_[j - 1], d_);
  }

  bool fails(std::size_t p) {
    const auto& target = targets_[p];
    for (std::size_t k = 0; k < d_.size(); ++k) diff_[k] = target[k] - d_[k];
    return !spec_.cone().interior_contains(diff_);
  }

 private:
  const ConeMetricSpec& spec_;
  std::span<const Point> terms_;
  std::optional<std::span<const double>> anchor_;
  std::vector<std::vector<double>> targets_;
  std::vector<double> d_, diff_;
};

void check_common(const ConeMetricSpec& spec, const Roughness& r, const EpsilonSchedule& sched) {
  sched.validate(spec.cone());
  require_same_dim(spec.dim(), r.value().dim(), "roughness");
}

void check_terms(const ConeMetricSpec& spec, std::span<const Point> terms) {
  if (terms.size() < 2) throw InputError("rough checks need a horizon of at least 2 terms");
  for (const auto& p : terms) spec.space().require(p, "sequence term");
}

std::vector<Point> prefix_for(const ConeMetricSpec& spec, const SequenceSpec& seq,
                              const EpsilonSchedule& sched) {
  seq.require_in(spec.space());
  return generate_prefix(seq, effective_horizon(seq, sched));
}

}  // namespace

std::size_t effective_horizon(const SequenceSpec& seq, const EpsilonSchedule& sched) {
  const std::size_t n = std::min(sched.horizon, seq.length());
  if (n < 2) throw InputError("rough checks need a horizon of at least 2 terms");
  return n;
}

Verdict r_convergent_on(const ConeMetricSpec& spec, std::span<const Point> terms,
                        std::span<const double> x, const Roughness& r,
                        const EpsilonSchedule& sched) {
  check_common(spec, r, sched);
  check_terms(spec, terms);
  spec.space().require(x, "limit candidate");
  ConeProbe probe(spec, terms, x, r, sched);
  return tail_verdict<false>(terms.size(), sched.scalars,
                             window_for(sched.window, terms.size()), probe,
                             "d(x_n, x) << r + t e");
}

Verdict r_cauchy_on(const ConeMetricSpec& spec, std::span<const Point> terms, const Roughness& r,
                    const EpsilonSchedule& sched) {
  check_common(spec, r, sched);
  check_terms(spec, terms);
  ConeProbe probe(spec, terms, std::nullopt, r, sched);
  return tail_verdict<true>(terms.size(), sched.scalars, window_for(sched.window, terms.size()),
                            probe, "d(x_i, x_j) << r + t e");
}

Verdict is_r_convergent_to(const ConeMetricSpec& spec, const SequenceSpec& seq,
                           std::span<const double> x, const Roughness& r,
                           const EpsilonSchedule& sched) {
  check_common(spec, r, sched);
  const auto terms = prefix_for(spec, seq, sched);
  return r_convergent_on(spec, terms, x, r, sched);
}

Verdict is_r_cauchy(const ConeMetricSpec& spec, const SequenceSpec& seq, const Roughness& r,
                    const EpsilonSchedule& sched) {
  check_common(spec, r, sched);
  const auto terms = prefix_for(spec, seq, sched);
  return r_cauchy_on(spec, terms, r, sched);
}

Verdict is_cauchy(const ConeMetricSpec& spec, const SequenceSpec& seq,
                  const EpsilonSchedule& sched) {
  return is_r_cauchy(spec, seq, Roughness::zero(spec.dim()), sched);
}

namespace {

class NormPairProbe {
 public:
  NormPairProbe(const NormSpec& norm, std::span<const VectorE> values, double bound,
                std::span<const double> scalars)
      : norm_(norm), values_(values), bound_(bound), scalars_(scalars),
        diff_(values.front().dim()) {}

  void load(std::size_t i, std::size_t j) {
    const auto& a = values_[i - 1];
    const auto& b = values_[j - 1];
    for (std::size_t k = 0; k < diff_.size(); ++k) diff_[k] = a[k] - b[k];
    gap_ = norm_(diff_);
  }

  bool fails(std::size_t p) const { return !(gap_ < bound_ + scalars_[p]); }

 private:
  const NormSpec& norm_;
  std::span<const VectorE> values_;
  double bound_;
  std::span<const double> scalars_;
  std::vector<double> diff_;
  double gap_ = 0.0;
};

class ScalarTailProbe {
 public:
  ScalarTailProbe(std::span<const double> values, std::span<const double> scalars)
      : values_(values), scalars_(scalars) {}
  void load(std::size_t n, std::size_t) { value_ = values_[n - 1]; }
  bool fails(std::size_t p) const { return !(value_ < scalars_[p]); }

 private:
  std::span<const double> values_;
  std::span<const double> scalars_;
  double value_ = 0.0;
};

void check_scalars_only(const EpsilonSchedule& sched) {
  if (sched.scalars.empty()) throw InputError("schedule needs at least one scalar");
  for (std::size_t k = 0; k < sched.scalars.size(); ++k) {
    if (!(sched.scalars[k] > 0.0) || (k > 0 && !(sched.scalars[k] < sched.scalars[k - 1]))) {
      throw InputError("schedule scalars must be positive and strictly decreasing");
    }
  }
}

}  // namespace

Verdict norm_rough_cauchy_on(const NormSpec& norm, std::span<const VectorE> values, double bound,
                             const EpsilonSchedule& sched) {
  check_scalars_only(sched);
  if (values.size() < 2) throw InputError("rough checks need a horizon of at least 2 terms");
  for (const auto& v : values) require_same_dim(values.front().dim(), v.dim(), "sequence in E");
  norm.validate(values.front().dim());
  NormPairProbe probe(norm, values, bound, sched.scalars);
  return tail_verdict<true>(values.size(), sched.scalars, window_for(sched.window, values.size()),
                            probe, "|a_i - a_j| < |r| + t");
}

Verdict scalar_tail_below(std::span<const double> values, const EpsilonSchedule& sched) {
  check_scalars_only(sched);
  if (values.size() < 2) throw InputError("rough checks need a horizon of at least 2 terms");
  ScalarTailProbe probe(values, sched.scalars);
  return tail_verdict<false>(values.size(), sched.scalars, window_for(sched.window, values.size()),
                             probe, "value_n < t");
}

BoundWitness bound_on(const ConeMetricSpec& spec, std::span<const Point> terms, double eta,
                      const VectorE& e) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw InputError("boundedness margin eta must be > 0");
  if (terms.size() < 2) throw InputError("boundedness witness horizon must be >= 2");
  require_same_dim(spec.dim(), e.dim(), "boundedness witness direction");
  if (!spec.cone().interior_contains(e)) throw InputError("boundedness direction must be in int P");
  for (const auto& p : terms) spec.space().require(p, "sequence term");

  const std::size_t m = spec.dim();
  const std::size_t n = terms.size();
  std::vector<double> s(m, 0.0), d(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      spec.eval_into(terms[i], terms[j], d);
      for (std::size_t k = 0; k < m; ++k) s[k] = std::max(s[k], d[k]);
    }
  }
  double lift = 0.0;
  if (!spec.cone().is_orthant()) {
    std::vector<double> excess(m);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        spec.eval_into(terms[i], terms[j], d);
        for (std::size_t k = 0; k < m; ++k) excess[k] = d[k] - s[k];
        lift = std::max(lift, spec.cone().gauge(excess, e));
      }
    }
  }
  VectorE sv(s);
  return {sv + (lift + eta) * e, sv, lift, n, eta, true};
}

BoundWitness is_bounded(const ConeMetricSpec& spec, const SequenceSpec& seq, std::size_t horizon,
                        double eta, std::optional<VectorE> e) {
  if (horizon < 2) throw InputError("boundedness witness horizon must be >= 2");
  seq.require_in(spec.space());
  if (horizon > seq.length()) throw InputError("boundedness horizon beyond table length");
  const VectorE dir = e ? *e : spec.cone().default_interior_witness();
  const auto terms = generate_prefix(seq, horizon);
  return bound_on(spec, terms, eta, dir);
}

std::vector<Point> linspace_grid(std::span<const double> from, std::span<const double> to,
                                 std::size_t count) {
  if (count == 0) throw InputError("grid needs at least one candidate");
  if (from.size() != to.size() || from.empty()) throw InputError("grid endpoints differ in size");
  std::vector<Point> grid;
  for (std::size_t k = 0; k < count; ++k) {
    Point x(from.size());
    for (std::size_t c = 0; c < x.size(); ++c) {
      if (count == 1) {
        x[c] = from[c];
      } else {
        const double den = static_cast<double>(count - 1);
        x[c] = (static_cast<double>(count - 1 - k) * from[c] + static_cast<double>(k) * to[c]) / den;
      }
    }
    grid.push_back(std::move(x));
  }
  return grid;
}

std::vector<LimitCandidate> scan_limit_candidates(const ConeMetricSpec& spec,
                                                  const SequenceSpec& seq, const Roughness& r,
                                                  const EpsilonSchedule& sched,
                                                  std::span<const Point> grid) {
  if (spec.space().kind != PointSpace::Kind::RealVector) {
    throw InputError("rough limit sets need a RealVector space");
  }
  if (grid.empty()) throw InputError("rough limit set grid must be nonempty");
  check_common(spec, r, sched);
  const auto terms = prefix_for(spec, seq, sched);
  std::vector<LimitCandidate> out;
  out.reserve(grid.size());
  for (const auto& x : grid) out.push_back({x, r_convergent_on(spec, terms, x, r, sched)});
  return out;
}

std::vector<Point> rough_limit_set(const ConeMetricSpec& spec, const SequenceSpec& seq,
                                   const Roughness& r, const EpsilonSchedule& sched,
                                   std::span<const Point> grid) {
  std::vector<Point> members;
  for (auto& c : scan_limit_candidates(spec, seq, r, sched, grid)) {
    if (c.verdict.holds()) members.push_back(std::move(c.x));
  }
  return members;
}

}  // namespace roughcone
