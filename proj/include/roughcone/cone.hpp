#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "roughcone/validation.hpp"
#include "roughcone/vector.hpp"

namespace roughcone {

class Cone;
class Rng;

namespace cones {

/// Nonnegative orthant of R^m.
struct Orthant {
  std::size_t dim = 1;
  friend bool operator==(const Orthant&, const Orthant&) = default;
};

/// {v : A v >= 0}; each entry of `rows` is one facet normal.
struct Polyhedral {
  std::vector<std::vector<double>> rows;
  friend bool operator==(const Polyhedral&, const Polyhedral&) = default;
};

/// {(t, u) : t >= |u|_2} in R^dim, dim >= 2.
struct SecondOrder {
  std::size_t dim = 2;
  friend bool operator==(const SecondOrder&, const SecondOrder&) = default;
};

/// Cartesian product; coordinates are the concatenation of the parts.
struct Product {
  std::vector<Cone> parts;
  friend bool operator==(const Product&, const Product&);
};

}  // namespace cones

/// A closed convex cone P in R^m together with the absolute margin used by
/// the interior test. Immutable once built.
///
/// Every representation is described by finitely many "slack" functionals
/// (facet values, or t - |u| for the second-order cone); `slack` returns
/// their minimum, so that
///   contains(v)          <=> slack(v) >= 0
///   interior_contains(v) <=> slack(v) >  margin.
/// For a product the margin of the outer cone applies and part margins are
/// ignored.
class Cone {
 public:
  using Representation =
      std::variant<cones::Orthant, cones::Polyhedral, cones::SecondOrder, cones::Product>;

  static Cone orthant(std::size_t dim, double margin = 0.0);
  static Cone polyhedral(std::vector<std::vector<double>> rows, double margin = 0.0);
  static Cone second_order(std::size_t dim, double margin = 0.0);
  static Cone product(std::vector<Cone> parts, double margin = 0.0);

  std::size_t dim() const noexcept { return dim_; }
  double margin() const noexcept { return margin_; }
  Cone with_margin(double margin) const;
  const Representation& representation() const noexcept { return rep_; }
  std::string kind_name() const;

  bool is_orthant() const noexcept { return std::holds_alternative<cones::Orthant>(rep_); }

  /// Membership in the closed cone, no margin. Throws InputError on a
  /// dimension mismatch.
  bool contains(std::span<const double> v) const;
  /// Membership with every slack strictly above the margin.
  bool interior_contains(std::span<const double> v) const;
  /// Closed membership up to an absolute slack tolerance.
  bool contains_within(std::span<const double> v, double tol) const;

  double slack(std::span<const double> v) const;

  /// Smallest lambda with lambda*e - v in P, for e in int P.
  double gauge(std::span<const double> v, std::span<const double> e) const;

  /// Largest s >= 0 with v + s*dir in P, for v in P. +inf when unbounded.
  double max_step(std::span<const double> v, std::span<const double> dir) const;

  /// All-ones for orthant and polyhedral cones (after checking it is
  /// interior), (1, 0, ..., 0) for the second-order cone, concatenation for
  /// products. Throws InputError when no interior point can be found.
  VectorE default_interior_witness() const;

  /// Random element of P; returns false when none could be produced.
  bool sample_member(Rng& rng, std::span<double> out) const;

  friend bool operator==(const Cone&, const Cone&) = default;

 private:
  Cone(Representation rep, double margin);

  double slack_unchecked(std::span<const double> v) const;

  Representation rep_;
  double margin_ = 0.0;
  std::size_t dim_ = 0;
};

/// x <= y, i.e. y - x in P.
bool leq(const Cone& cone, std::span<const double> x, std::span<const double> y);
/// x << y, i.e. y - x in int P.
bool ll(const Cone& cone, std::span<const double> x, std::span<const double> y);

/// Checks the cone axioms that admit a finite test: (i) P != {0},
/// (ii) closure under nonnegative combinations on `trials` sampled pairs,
/// (iii) pointedness. Closedness holds by construction and is not tested.
/// Axiom names in the report: "nontrivial", "convex-combination", "pointed".
ValidationReport validate_cone(const Cone& cone, std::uint64_t seed, std::size_t trials);

}  // namespace roughcone
