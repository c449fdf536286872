#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "roughcone/cone.hpp"
#include "roughcone/validation.hpp"
#include "roughcone/vector.hpp"

namespace roughcone {

/// A point of X. RealVector spaces use q coordinates; FiniteLabeled spaces
/// use a single coordinate holding the label 0..n-1.
using Point = std::vector<double>;

struct PointSpace {
  enum class Kind { RealVector, FiniteLabeled };

  Kind kind = Kind::RealVector;
  std::size_t size = 1;  // q for RealVector, n for FiniteLabeled

  static PointSpace real_vector(std::size_t q);
  static PointSpace finite_labeled(std::size_t n);

  std::size_t point_dim() const noexcept { return kind == Kind::RealVector ? size : 1; }
  bool contains(std::span<const double> p) const noexcept;
  /// Throws InputError naming `what` when `p` is not a point of the space.
  void require(std::span<const double> p, const char* what) const;

  friend bool operator==(const PointSpace&, const PointSpace&) = default;
};

enum class BaseMetric { Euclidean, Sup, Discrete };

std::string to_string(BaseMetric base);

namespace rules {

/// d(x, y) = rho(x, y) * e.
struct Lifted {
  BaseMetric base = BaseMetric::Euclidean;
  VectorE witness{1.0, 1.0};
  friend bool operator==(const Lifted&, const Lifted&) = default;
};

/// X = R, E = R^2 ordered by the orthant: d(x, y) = (|x-y|, alpha |x-y|).
struct TwoComponent {
  double alpha = 1.0;
  friend bool operator==(const TwoComponent&, const TwoComponent&) = default;
};

/// Explicit n x n matrix of values for a FiniteLabeled space.
struct Table {
  std::vector<std::vector<VectorE>> values;
  friend bool operator==(const Table&, const Table&) = default;
};

}  // namespace rules

/// A point space X with a map d : X x X -> E. Construction checks the
/// structural invariants only; the metric axioms are checked by
/// validate_metric (builtin_space does both).
class ConeMetricSpec {
 public:
  using Rule = std::variant<rules::Lifted, rules::TwoComponent, rules::Table>;

  static ConeMetricSpec lifted(std::size_t q, BaseMetric base, VectorE witness, Cone cone,
                               NormSpec norm = NormSpec::euclidean());
  static ConeMetricSpec two_component(double alpha, NormSpec norm = NormSpec::euclidean());
  static ConeMetricSpec table(std::vector<std::vector<VectorE>> values, Cone cone,
                              NormSpec norm = NormSpec::euclidean());

  const PointSpace& space() const noexcept { return space_; }
  const Cone& cone() const noexcept { return cone_; }
  const NormSpec& norm() const noexcept { return norm_; }
  const Rule& rule() const noexcept { return rule_; }
  std::size_t dim() const noexcept { return cone_.dim(); }
  std::string rule_name() const;

  /// d(x, y). Throws InputError for points outside the space.
  VectorE eval(std::span<const double> x, std::span<const double> y) const;

  /// Unchecked d(x, y) written into `out` (size dim()).
  void eval_into(std::span<const double> x, std::span<const double> y,
                 std::span<double> out) const noexcept;

  /// True for rules of the form d(x, y) = rho(x, y) * unit_value().
  bool is_scalar_lift() const noexcept;
  /// d-value at base distance 1 (Lifted: e; TwoComponent: (1, alpha)).
  VectorE unit_value() const;
  /// rho(x, y) for scalar-lift rules.
  double base_distance(std::span<const double> x, std::span<const double> y) const;

  friend bool operator==(const ConeMetricSpec&, const ConeMetricSpec&) = default;

 private:
  ConeMetricSpec(PointSpace space, Cone cone, NormSpec norm, Rule rule);

  PointSpace space_;
  Cone cone_;
  NormSpec norm_;
  Rule rule_;
};

/// Axiom names: "d1-positivity", "d1-identity", "d2-symmetry", "d3-triangle".
/// Vector equalities use an absolute per-coordinate tolerance `tau_eq`;
/// symmetry is bitwise for rule-based specs.
ValidationReport validate_metric(const ConeMetricSpec& spec, std::span<const Point> sample,
                                 double tau_eq = 1e-12);

/// Deterministic sample used to validate built-in spaces: every label of a
/// FiniteLabeled space, or a fixed spread of points for RealVector spaces.
std::vector<Point> canonical_sample(const ConeMetricSpec& spec);

/// Parameters accepted by builtin_space. Fields not used by `name` are
/// ignored.
struct SpaceParams {
  std::string name = "lifted";  // lifted | two-component | table
  BaseMetric base = BaseMetric::Euclidean;
  std::size_t q = 1;
  VectorE witness{1.0, 1.0};
  double alpha = 1.0;
  Cone cone = Cone::orthant(2);
  NormSpec norm;
  std::vector<std::vector<VectorE>> table;

  friend bool operator==(const SpaceParams&, const SpaceParams&) = default;
};

/// Builds and validates a named space; throws InputError on unknown names,
/// invalid parameters, or a failed validation on the canonical sample.
ConeMetricSpec builtin_space(const SpaceParams& params);

}  // namespace roughcone
