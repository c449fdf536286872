#include "roughcone/constants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "roughcone/error.hpp"
#include "roughcone/random.hpp"

namespace roughcone {

namespace {

void check_pair(const Cone& cone, const NormSpec& norm) { norm.validate(cone.dim()); }

// Admissible pairs for the normal constant: x in P and y - x in P.
// Calls visit(x, y) for every admissible pair found.
void sample_normal_pairs(const Cone& cone, std::uint64_t seed, std::size_t trials,
                         const std::function<void(std::span<const double>,
                                                  std::span<const double>)>& visit) {
  Rng rng(derive_seed(seed, 11, 0));
  const std::size_t m = cone.dim();
  std::vector<double> x(m), w(m), y(m), diff(m);
  for (std::size_t t = 0; t < trials; ++t) {
    if (t == 0) {
      const auto e = cone.default_interior_witness();
      std::copy(e.coords().begin(), e.coords().end(), x.begin());
    } else if (!cone.sample_member(rng, x)) {
      continue;
    }
    double scale = 0.0;
    if (t != 0 && !rng.chance(0.1)) {
      if (!cone.sample_member(rng, w)) continue;
      scale = rng.chance(0.2) ? rng.uniform(0.0, 1e-3) : rng.uniform(0.0, 2.0);
    }
    for (std::size_t i = 0; i < m; ++i) y[i] = x[i] + scale * (t == 0 ? 0.0 : w[i]);
    for (std::size_t i = 0; i < m; ++i) diff[i] = y[i] - x[i];
    if (!cone.contains(x) || !cone.contains(diff)) continue;
    visit(x, y);
  }
}

// Admissible pairs for condition (*): c in P, c - p in P, c + p in P.
void sample_star_pairs(const Cone& cone, std::uint64_t seed, std::size_t trials,
                       const std::function<void(std::span<const double>,
                                                std::span<const double>)>& visit) {
  Rng rng(derive_seed(seed, 12, 0));
  const std::size_t m = cone.dim();
  std::vector<double> c(m), p(m), q(m), neg_q(m), lo(m), hi(m);
  auto admissible = [&] {
    for (std::size_t i = 0; i < m; ++i) {
      lo[i] = c[i] - p[i];
      hi[i] = c[i] + p[i];
    }
    return cone.contains(c) && cone.contains(lo) && cone.contains(hi);
  };
  for (std::size_t t = 0; t < trials; ++t) {
    if (t == 0) {
      const auto e = cone.default_interior_witness();
      std::copy(e.coords().begin(), e.coords().end(), c.begin());
    } else if (!cone.sample_member(rng, c)) {
      continue;
    }
    if (t == 0 || rng.chance(0.1)) {
      const double sign = (t == 0 || rng.chance(0.5)) ? 1.0 : -1.0;
      for (std::size_t i = 0; i < m; ++i) p[i] = sign * c[i];
    } else {
      for (std::size_t i = 0; i < m; ++i) {
        q[i] = rng.normal();
        neg_q[i] = -q[i];
      }
      const double s = std::min(cone.max_step(c, q), cone.max_step(c, neg_q));
      if (!std::isfinite(s)) continue;
      const double u = rng.chance(0.3) ? 1.0 : rng.uniform();
      for (std::size_t i = 0; i < m; ++i) p[i] = u * s * q[i];
    }
    bool ok = admissible();
    for (int shrink = 0; shrink < 5 && !ok; ++shrink) {
      for (double& x : p) x *= 1.0 - 1e-9;
      ok = admissible();
    }
    if (ok) visit(p, c);
  }
}

ConstantEstimate exact_or_throw(const Cone& cone, const NormSpec& norm, const char* what) {
  if (cone.is_orthant()) return {1.0, Provenance::ExactDerived, 0};
  throw NoExactConstant(std::string("no exact ") + what + " known for " + cone.kind_name() +
                        " cone with " + norm.name() + " norm; use empirical mode");
}

}  // namespace

ConstantEstimate normal_constant(const Cone& cone, const NormSpec& norm, ConstantMode mode,
                                 std::uint64_t seed, std::size_t trials) {
  check_pair(cone, norm);
  if (mode == ConstantMode::ExactIfKnown) return exact_or_throw(cone, norm, "normal constant");
  if (trials == 0) throw InputError("normal_constant: trials must be >= 1");
  ConstantEstimate est{0.0, Provenance::EmpiricalLowerBound, 0};
  sample_normal_pairs(cone, seed, trials, [&](auto x, auto y) {
    const double ny = norm(y);
    if (ny == 0.0) return;
    est.value = std::max(est.value, norm(x) / ny);
    ++est.samples;
  });
  return est;
}

ConstantEstimate star_constant(const Cone& cone, const NormSpec& norm, ConstantMode mode,
                               std::uint64_t seed, std::size_t trials) {
  check_pair(cone, norm);
  if (mode == ConstantMode::ExactIfKnown) return exact_or_throw(cone, norm, "star constant");
  if (trials == 0) throw InputError("star_constant: trials must be >= 1");
  ConstantEstimate est{0.0, Provenance::EmpiricalLowerBound, 0};
  sample_star_pairs(cone, seed, trials, [&](auto p, auto c) {
    const double nc = norm(c);
    if (nc == 0.0) return;
    est.value = std::max(est.value, norm(p) / nc);
    ++est.samples;
  });
  return est;
}

NormalityInfo normality(const Cone& cone, const NormSpec& norm, ConstantMode mode,
                        std::uint64_t seed, std::size_t trials) {
  return {normal_constant(cone, norm, mode, seed, trials),
          star_constant(cone, norm, mode, seed, trials)};
}

ValidationReport verify_star_condition(const Cone& cone, const NormSpec& norm, double k,
                                       std::uint64_t seed, std::size_t trials) {
  check_pair(cone, norm);
  if (!(k > 0.0) || !std::isfinite(k)) throw InputError("verify_star_condition: k must be > 0");
  if (trials == 0) throw InputError("verify_star_condition: trials must be >= 1");
  ValidationReport report;
  report.subject = "star-condition:" + cone.kind_name() + "/" + norm.name();
  AxiomCheck check{"star-condition", true, true, 0, "", {}};
  sample_star_pairs(cone, seed, trials, [&](auto p, auto c) {
    ++check.checks;
    if (!check.passed) return;
    const double np = norm(p), nc = norm(c);
    if (np > k * nc) {
      check.passed = false;
      check.detail = "|p| = " + std::to_string(np) + " > k |c| = " + std::to_string(k * nc);
      check.witness = {VectorE(p), VectorE(c)};
    }
  });
  report.axioms.push_back(std::move(check));
  return report;
}

}  // namespace roughcone
