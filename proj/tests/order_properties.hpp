#pragma once

// Randomized order-predicate properties shared by the unit tests and the
// acceptance run. Vectors live on a dyadic grid (multiples of 1/8, |v_i| <= 64)
// and scalings are powers of two, so differences, sums and scalings are exact
// in floating point and "both sides reduce to the same difference" holds
// bitwise. Boundary points are generated on purpose.

#include <cmath>
#include <string>
#include <vector>

#include "roughcone/cone.hpp"
#include "roughcone/random.hpp"

namespace roughcone::testing {

struct PropertyTally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first_failure = what;
  }
};

inline VectorE grid_vector(Rng& rng, std::size_t dim) {
  std::vector<double> v(dim);
  for (double& c : v) c = static_cast<double>(static_cast<std::int64_t>(rng.below(1025)) - 512) / 8.0;
  return VectorE(std::move(v));
}

// A member of P on the grid; every third draw is pushed onto the boundary.
inline VectorE grid_member(const Cone& cone, Rng& rng) {
  for (;;) {
    VectorE u = grid_vector(rng, cone.dim());
    if (!cone.contains(u)) u = -u;
    if (!cone.contains(u)) {
      if (!cone.is_orthant()) continue;
      std::vector<double> c = u.coords();
      for (double& x : c) x = std::abs(x);
      u = VectorE(c);
    }
    if (rng.below(3) == 0 && cone.is_orthant()) {
      std::vector<double> c = u.coords();
      c[rng.below(c.size())] = 0.0;
      u = VectorE(c);
    }
    return u;
  }
}

// Pythagorean boundary points of the second-order cone (t, u) with t = |u|.
inline VectorE soc_boundary(Rng& rng, std::size_t dim) {
  static const double triples[][3] = {{5, 3, 4}, {13, 5, 12}, {17, 8, 15}, {25, 7, 24}};
  const auto& tr = triples[rng.below(4)];
  const double k = static_cast<double>(1 + rng.below(4)) / 2.0;
  std::vector<double> v(dim, 0.0);
  v[0] = tr[0] * k;
  v[1] = (rng.chance(0.5) ? 1.0 : -1.0) * tr[1] * k;
  if (dim > 2) v[2] = (rng.chance(0.5) ? 1.0 : -1.0) * tr[2] * k;
  else v[1] = (v[1] < 0 ? -1.0 : 1.0) * tr[0] * k;
  return VectorE(std::move(v));
}

/// Runs `rounds` rounds of four properties (so 4 * rounds checks) on `cone`.
inline void check_order_properties(const Cone& cone, std::uint64_t seed, std::size_t rounds,
                                   PropertyTally& tally) {
  Rng rng(seed);
  const bool soc = std::holds_alternative<cones::SecondOrder>(cone.representation());
  const std::string name = cone.kind_name();
  for (std::size_t k = 0; k < rounds; ++k) {
    const VectorE x = grid_vector(rng, cone.dim());
    VectorE u = soc && rng.chance(0.3) ? soc_boundary(rng, cone.dim()) : grid_member(cone, rng);
    // Half the pairs are ordered by construction, half are arbitrary.
    const VectorE y = rng.chance(0.5) ? x + u : grid_vector(rng, cone.dim());
    const VectorE z = grid_vector(rng, cone.dim());
    const double t = std::ldexp(1.0, static_cast<int>(rng.below(21)) - 10);
    const VectorE v = y - x;

    // order consistency: x << y implies x <= y and x != y
    tally.expect(!ll(cone, x, y) || (leq(cone, x, y) && !(x == y)), name + ": consistency");
    // translation invariance
    tally.expect(leq(cone, x, y) == leq(cone, x + z, y + z) &&
                     ll(cone, x, y) == ll(cone, x + z, y + z),
                 name + ": translation");
    // positive scaling (margin 0)
    tally.expect(cone.contains(v) == cone.contains(t * v) &&
                     cone.interior_contains(v) == cone.interior_contains(t * v),
                 name + ": scaling");
    // interior additivity: u in P, w in int P  =>  u + w in int P
    VectorE w = grid_member(cone, rng);
    while (!cone.interior_contains(w)) w = w + cone.default_interior_witness();
    tally.expect(cone.interior_contains(u + w), name + ": interior additivity");
  }
}

}  // namespace roughcone::testing
