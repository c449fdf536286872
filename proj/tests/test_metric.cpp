#include "doctest.h"
#include "roughcone/error.hpp"
#include "roughcone/metric.hpp"

using namespace roughcone;

TEST_CASE("eval_d examples") {
  const auto two = ConeMetricSpec::two_component(2.0);
  CHECK(two.eval(Point{1.0}, Point{3.0}) == VectorE{2.0, 4.0});
  const auto lifted = ConeMetricSpec::lifted(2, BaseMetric::Euclidean, VectorE{1.0, 1.0}, Cone::orthant(2));
  CHECK(lifted.eval(Point{0.0, 0.0}, Point{3.0, 4.0}) == VectorE{5.0, 5.0});
  CHECK(lifted.eval(Point{1.5, -2.0}, Point{1.5, -2.0}).is_zero());
  CHECK(two.eval(Point{7.0}, Point{7.0}).is_zero());
  CHECK_THROWS_AS(lifted.eval(Point{0.0}, Point{1.0}), InputError);
}

TEST_CASE("base metrics") {
  const auto sup = ConeMetricSpec::lifted(2, BaseMetric::Sup, VectorE{1.0, 2.0}, Cone::orthant(2));
  CHECK(sup.eval(Point{0.0, 0.0}, Point{3.0, -4.0}) == VectorE{4.0, 8.0});
  const auto disc = ConeMetricSpec::lifted(2, BaseMetric::Discrete, VectorE{1.0, 1.0}, Cone::orthant(2));
  CHECK(disc.eval(Point{0.0, 0.0}, Point{0.0, 1e-9}) == VectorE{1.0, 1.0});
}

TEST_CASE("validate_metric on built-in rules") {
  const auto lifted = ConeMetricSpec::lifted(2, BaseMetric::Euclidean, VectorE{1.0, 1.0}, Cone::orthant(2));
  const std::vector<Point> sample{{0.0, 0.0}, {3.0, 4.0}, {-1.0, 2.0}, {0.1, 0.1}};
  const auto rep = validate_metric(lifted, sample);
  CHECK(rep.passed());
  for (const char* name : {"d1-positivity", "d1-identity", "d2-symmetry", "d3-triangle"}) {
    CHECK(rep.find(name) != nullptr);
  }
  const auto two = ConeMetricSpec::two_component(0.5);
  CHECK(validate_metric(two, canonical_sample(two)).passed());
  CHECK_THROWS_AS(validate_metric(two, std::vector<Point>{{0.0}, {1.0}}), InputError);
}

TEST_CASE("table metrics") {
  const VectorE e{1.0};
  const VectorE z{0.0};
  const auto asym = ConeMetricSpec::table({{z, e, e}, {2.0 * e, z, e}, {e, e, z}}, Cone::orthant(1));
  const auto rep = validate_metric(asym, canonical_sample(asym));
  REQUIRE(rep.find("d2-symmetry"));
  CHECK_FALSE(rep.find("d2-symmetry")->passed);
  CHECK_FALSE(rep.find("d2-symmetry")->witness.empty());

  const auto tri = ConeMetricSpec::table({{z, e, 5.0 * e}, {e, z, e}, {5.0 * e, e, z}}, Cone::orthant(1));
  const auto rep2 = validate_metric(tri, canonical_sample(tri));
  REQUIRE(rep2.find("d3-triangle"));
  CHECK_FALSE(rep2.find("d3-triangle")->passed);
  CHECK(rep2.find("d3-triangle")->witness.size() == 3);

  // tolerance: a symmetric table with a tiny rounding defect passes
  const auto near = ConeMetricSpec::table({{z, e, e}, {VectorE{1.0 + 1e-14}, z, e}, {e, e, z}},
                                          Cone::orthant(1));
  CHECK(validate_metric(near, canonical_sample(near)).passed());

  CHECK_THROWS_AS(ConeMetricSpec::table({{z, e}}, Cone::orthant(1)), InputError);
}

TEST_CASE("builtin_space") {
  SpaceParams p;
  p.name = "two-component";
  p.alpha = 1.0;
  const auto two = builtin_space(p);
  CHECK(two.space().kind == PointSpace::Kind::RealVector);
  CHECK(two.space().size == 1);
  CHECK(two.dim() == 2);

  SpaceParams b;
  b.name = "lifted";
  b.q = 1;
  b.witness = VectorE{1.0, 0.0};  // boundary witness is allowed
  CHECK_NOTHROW(builtin_space(b));
  b.witness = VectorE{0.0, 0.0};
  CHECK_THROWS_AS(builtin_space(b), InputError);
  b.witness = VectorE{1.0, -1.0};
  CHECK_THROWS_AS(builtin_space(b), InputError);

  SpaceParams neg;
  neg.name = "two-component";
  neg.alpha = -1.0;
  CHECK_THROWS_AS(builtin_space(neg), InputError);

  SpaceParams unknown;
  unknown.name = "hyperbolic";
  CHECK_THROWS_AS(builtin_space(unknown), InputError);
}

TEST_CASE("symmetry is bitwise for rule-based specs") {
  const auto lifted = ConeMetricSpec::lifted(3, BaseMetric::Euclidean, VectorE{1.0, 0.3}, Cone::orthant(2));
  const Point x{0.1, 0.7, -3.3}, y{2.9, -0.123456789, 1e-7};
  CHECK(lifted.eval(x, y) == lifted.eval(y, x));
}
