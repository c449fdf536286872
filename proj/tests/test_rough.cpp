#include <algorithm>

#include "doctest.h"
#include "roughcone/error.hpp"
#include "roughcone/random.hpp"
#include "roughcone/rough.hpp"

using namespace roughcone;

namespace {

ConeMetricSpec lifted1(VectorE e = VectorE{1.0, 1.0}) {
  return ConeMetricSpec::lifted(1, BaseMetric::Euclidean, std::move(e), Cone::orthant(2));
}

EpsilonSchedule sched(std::size_t horizon = 2000) {
  EpsilonSchedule s = EpsilonSchedule::default_for(Cone::orthant(2));
  s.horizon = horizon;
  return s;
}

Roughness rough(double v) {
  return v == 0.0 ? Roughness::zero(2) : Roughness::make(Cone::orthant(2), VectorE{v, v});
}

}  // namespace

TEST_CASE("default schedule") {
  const auto s = EpsilonSchedule::default_for(Cone::orthant(2));
  CHECK(s.witness == VectorE{1.0, 1.0});
  REQUIRE(s.scalars.size() == 13);
  CHECK(s.scalars.front() == 1.0);
  CHECK(s.scalars.back() == 1.0 / 4096.0);
  CHECK(s.horizon == 2000);
  CHECK(s.stability_window() == 200);
  CHECK(EpsilonSchedule::default_for(Cone::second_order(3)).witness == VectorE{1.0, 0.0, 0.0});
  EpsilonSchedule bad = s;
  bad.scalars = {0.5, 1.0};
  CHECK_THROWS_AS(bad.validate(Cone::orthant(2)), InputError);
  bad = s;
  bad.witness = VectorE{1.0, 0.0};
  CHECK_THROWS_AS(bad.validate(Cone::orthant(2)), InputError);
  bad = s;
  bad.horizon = 1;
  CHECK_THROWS_AS(bad.validate(Cone::orthant(2)), InputError);
}

TEST_CASE("roughness classes") {
  const auto c = Cone::orthant(2);
  CHECK(Roughness::make(c, VectorE{0.0, 0.0}).is_zero());
  CHECK(Roughness::make(c, VectorE{1.0, 2.0}).cls() == Roughness::Class::Interior);
  CHECK_THROWS_AS(Roughness::make(c, VectorE{1.0, 0.0}), InputError);
  CHECK_THROWS_AS(Roughness::make(c, VectorE{-1.0, -1.0}), InputError);
}

TEST_CASE("r-convergence examples") {
  const auto spec = lifted1();
  const auto dec = SequenceSpec::decay({0.0}, {1.0}, 1.0, 0.5);
  CHECK(is_r_convergent_to(spec, dec, Point{0.0}, rough(0.0), sched()).holds());

  const auto osc = SequenceSpec::oscillating({-1.0}, {1.0});
  const auto at0 = is_r_convergent_to(spec, osc, Point{0.0}, rough(1.0), sched());
  CHECK(at0.holds());
  for (const auto& s : at0.scalars) CHECK(s.m == 1);

  const auto at_half = is_r_convergent_to(spec, osc, Point{0.5}, rough(1.0), sched());
  CHECK(at_half.outcome == Outcome::Refuted);
  REQUIRE(at_half.refutation);
  CHECK(at_half.refutation->t == 0.5);  // largest refuted scalar: 1.5 << 1 + t fails for t <= 0.5
  // the witness re-verifies with a single predicate call
  const auto& w = *at_half.refutation;
  CHECK_FALSE(ll(spec.cone(), spec.eval(generate(osc, w.i), Point{0.5}),
                 VectorE{1.0, 1.0} + w.t * VectorE{1.0, 1.0}));
}

TEST_CASE("r-Cauchy examples") {
  const auto two = ConeMetricSpec::two_component(1.0);
  const auto osc = SequenceSpec::oscillating({0.0}, {2.0});
  const auto c = Cone::orthant(2);
  const auto holds = is_r_cauchy(two, osc, Roughness::make(c, VectorE{2.0, 2.0}), sched());
  CHECK(holds.holds());
  for (const auto& s : holds.scalars) CHECK(s.m == 1);

  const auto refuted = is_r_cauchy(two, osc, Roughness::make(c, VectorE{1.0, 1.0}), sched());
  CHECK(refuted.outcome == Outcome::Refuted);
  REQUIRE(refuted.refutation);
  const auto& w = *refuted.refutation;
  CHECK(w.t == 1.0);
  CHECK_FALSE(ll(c, two.eval(generate(osc, w.i), generate(osc, w.j)),
                 VectorE{1.0, 1.0} + w.t * VectorE{1.0, 1.0}));
  for (const auto& s : refuted.scalars) CHECK(s.outcome == Outcome::Refuted);

  const auto spec = lifted1();
  const auto dec = SequenceSpec::decay({3.0}, {-1.0}, 5.0, 0.8);
  const auto a = is_r_cauchy(spec, dec, rough(0.0), sched());
  CHECK(a.holds());
  CHECK(a == is_cauchy(spec, dec, sched()));
}

TEST_CASE("Cauchy examples") {
  const auto spec = lifted1();
  CHECK(is_cauchy(spec, SequenceSpec::decay({0.0}, {1.0}, 2.0, 0.7), sched()).holds());
  CHECK(is_cauchy(spec, SequenceSpec::oscillating({-1.0}, {1.0}), sched()).outcome == Outcome::Refuted);
  const auto rep = is_cauchy(spec, SequenceSpec::table({{3.0}, {3.0}, {3.0}, {3.0}}), sched());
  CHECK(rep.holds());
  CHECK(rep.horizon == 4);
  for (const auto& s : rep.scalars) CHECK(s.m == 1);
}

TEST_CASE("three-valued verdict: late-only violations are inconclusive") {
  const auto spec = lifted1();
  std::vector<Point> pts(100, Point{0.0});
  pts.back() = Point{5.0};
  const auto v = is_r_convergent_to(spec, SequenceSpec::table(pts), Point{0.0}, rough(0.0), sched());
  CHECK(v.outcome == Outcome::Inconclusive);
  CHECK_FALSE(v.refutation);
  CHECK_FALSE(v.reason.empty());

  // one early and one late violation: persistent, hence refuted
  pts[10] = Point{5.0};
  const auto r = is_r_convergent_to(spec, SequenceSpec::table(pts), Point{0.0}, rough(0.0), sched());
  CHECK(r.outcome == Outcome::Refuted);

  // early-only violations: the tail is clean, m is just past the last one
  pts.back() = Point{0.0};
  const auto h = is_r_convergent_to(spec, SequenceSpec::table(pts), Point{0.0}, rough(0.0), sched());
  CHECK(h.holds());
  for (const auto& s : h.scalars) CHECK(s.m == 12);
}

TEST_CASE("is_bounded examples") {
  const auto two = ConeMetricSpec::two_component(1.0);
  const auto b = is_bounded(two, SequenceSpec::oscillating({0.0}, {2.0}), 100, 0.1);
  CHECK(b.g[0] == doctest::Approx(2.1));
  CHECK(b.g[1] == doctest::Approx(2.1));
  CHECK(b.horizon_limited);

  const auto spec = lifted1();
  const auto c = is_bounded(spec, SequenceSpec::drift({4.0}, {0.0}), 50, 0.25);
  CHECK(c.g == VectorE{0.25, 0.25});

  const auto d = is_bounded(spec, SequenceSpec::drift({0.0}, {1.0}), 100, 0.1);
  CHECK(leq(spec.cone(), VectorE{99.0, 99.0}, d.g));
  CHECK(d.horizon_limited);
  const auto d2 = is_bounded(spec, SequenceSpec::drift({0.0}, {1.0}), 200, 0.1);
  CHECK(ll(spec.cone(), d.g, d2.g));
  CHECK_THROWS_AS(is_bounded(spec, SequenceSpec::drift({0.0}, {1.0}), 1, 0.1), InputError);
}

TEST_CASE("is_bounded dominates every pair on a non-orthant cone") {
  const auto spec = ConeMetricSpec::table(
      {{VectorE{0.0, 0.0, 0.0}, VectorE{2.0, 1.5, 1.0}, VectorE{2.0, -1.5, 1.0}},
       {VectorE{2.0, 1.5, 1.0}, VectorE{0.0, 0.0, 0.0}, VectorE{2.0, 0.0, -1.5}},
       {VectorE{2.0, -1.5, 1.0}, VectorE{2.0, 0.0, -1.5}, VectorE{0.0, 0.0, 0.0}}},
      Cone::second_order(3));
  const auto seq = SequenceSpec::table({{0.0}, {1.0}, {2.0}, {1.0}});
  const auto b = is_bounded(spec, seq, 4, 0.1);
  for (std::size_t i = 1; i <= 4; ++i) {
    for (std::size_t j = 1; j <= 4; ++j) {
      CHECK(ll(spec.cone(), spec.eval(generate(seq, i), generate(seq, j)), b.g));
    }
  }
}

TEST_CASE("rough limit set examples") {
  const auto spec = lifted1();
  const auto osc = SequenceSpec::oscillating({-1.0}, {1.0});
  const auto grid = linspace_grid(Point{-1.0}, Point{1.0}, 21);
  CHECK(grid[10] == Point{0.0});
  CHECK(grid.front() == Point{-1.0});
  CHECK(grid.back() == Point{1.0});
  CHECK(rough_limit_set(spec, osc, rough(1.0), sched(), grid) == std::vector<Point>{{0.0}});
  CHECK(rough_limit_set(spec, osc, rough(2.0), sched(), grid) == grid);
  CHECK(rough_limit_set(spec, osc, rough(0.5), sched(), grid).empty());
}

TEST_CASE("rough limit set grows with r") {
  const auto spec = lifted1();
  const auto osc = SequenceSpec::oscillating({-1.0}, {1.0});
  const auto grid = linspace_grid(Point{-2.0}, Point{2.0}, 41);
  std::vector<Point> previous;
  for (double r : {0.5, 1.0, 1.3, 1.75, 2.0, 3.0}) {
    const auto set = rough_limit_set(spec, osc, rough(r), sched(400), grid);
    for (const auto& p : previous) CHECK(std::find(set.begin(), set.end(), p) != set.end());
    previous = set;
  }
}

TEST_CASE("monotonicity in r") {
  Rng rng(17);
  const auto spec = lifted1();
  for (int k = 0; k < 20; ++k) {
    const auto seq = SequenceSpec::osc_decay({rng.uniform(-2.0, 2.0)}, {1.0}, rng.uniform(0.0, 1.5),
                                             rng.uniform(0.0, 2.0), rng.uniform(0.3, 0.95));
    std::vector<Verdict> vs;
    for (double r : {0.0, 0.5, 1.0, 2.0, 3.0, 4.0}) vs.push_back(is_r_cauchy(spec, seq, rough(r), sched(500)));
    for (std::size_t a = 0; a + 1 < vs.size(); ++a) {
      if (!vs[a].holds()) continue;
      CHECK(vs[a + 1].holds());
      for (std::size_t s = 0; s < vs[a].scalars.size(); ++s) {
        CHECK(vs[a + 1].scalars[s].m <= vs[a].scalars[s].m);
      }
    }
  }
}

TEST_CASE("verdicts agree across interior witnesses where ground truth is known") {
  const auto osc = SequenceSpec::oscillating({-1.0}, {1.0});
  const auto dec = SequenceSpec::decay({0.0}, {1.0}, 3.0, 0.6);
  for (const VectorE& e : {VectorE{1.0, 1.0}, VectorE{0.5, 2.0}, VectorE{3.0, 0.25}}) {
    const auto spec = lifted1(VectorE{1.0, 1.0});
    auto s = sched(500);
    s.witness = e;
    // Oscillating(-1, 1): 2-Cauchy holds, 1-Cauchy is refuted; decay is Cauchy
    CHECK(is_r_cauchy(spec, osc, rough(2.0), s).holds());
    CHECK(is_r_cauchy(spec, osc, rough(1.0), s).outcome == Outcome::Refuted);
    CHECK(is_cauchy(spec, dec, s).holds());
    CHECK(is_r_convergent_to(spec, osc, Point{0.0}, rough(1.0), s).holds());
  }
}

TEST_CASE("refutation witnesses re-verify on random instances") {
  Rng rng(99);
  const auto spec = ConeMetricSpec::two_component(0.7);
  int refuted = 0;
  for (int k = 0; k < 60; ++k) {
    const auto seq = SequenceSpec::bounded_walk(rng.bits(), {0.0}, rng.uniform(0.1, 1.0), rng.uniform(0.5, 2.0));
    const VectorE rv{rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0)};
    const auto r = Roughness::make(spec.cone(), rv);
    const auto v = is_r_cauchy(spec, seq, r, sched(300));
    if (v.outcome != Outcome::Refuted) continue;
    ++refuted;
    REQUIRE(v.refutation);
    const auto& w = *v.refutation;
    CHECK_FALSE(ll(spec.cone(), spec.eval(generate(seq, w.i), generate(seq, w.j)),
                   rv + w.t * sched().witness));
  }
  CHECK(refuted > 0);
}

TEST_CASE("scalar checks") {
  const auto s = sched(100);
  std::vector<double> vals(100);
  for (std::size_t n = 0; n < 100; ++n) vals[n] = 1.0 / static_cast<double>((n + 1) * (n + 1));
  const auto fine = scalar_tail_below(vals, s);
  CHECK(fine.holds());
  CHECK(fine.scalars.back().m == 65);  // 1/64^2 = 2^-12 exactly, so n = 64 is the last violation
  auto coarse = s;
  coarse.scalars = {1.0, 0.1, 0.01};
  const auto v = scalar_tail_below(vals, coarse);
  CHECK(v.holds());
  CHECK(v.scalars[2].m == 11);  // 1/n^2 < 0.01 from n = 11

  std::vector<VectorE> a(50, VectorE{1.0, 0.0});
  for (std::size_t n = 0; n < 50; n += 2) a[n] = VectorE{0.0, 0.0};
  CHECK(norm_rough_cauchy_on(NormSpec::sup(), a, 1.0, s).holds());
  CHECK(norm_rough_cauchy_on(NormSpec::sup(), a, 0.5, s).outcome == Outcome::Refuted);
}
