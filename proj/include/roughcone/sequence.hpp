#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <variant>
#include <vector>

#include "roughcone/metric.hpp"

namespace roughcone {

namespace families {

/// x_n = a for even n, b for odd n.
struct Oscillating {
  Point a, b;
  friend bool operator==(const Oscillating&, const Oscillating&) = default;
};

/// x_n = center + amplitude * ratio^n * direction.
struct Decay {
  Point center, direction;
  double amplitude = 1.0;
  double ratio = 0.5;
  friend bool operator==(const Decay&, const Decay&) = default;
};

/// x_n = center + (-1)^n (base + transient * ratio^n) * direction. With a
/// direction of unit base length the distance to the center is exactly the
/// profile base + transient * ratio^n.
struct OscDecay {
  Point center, direction;
  double base = 0.0;
  double transient = 1.0;
  double ratio = 0.5;
  friend bool operator==(const OscDecay&, const OscDecay&) = default;
};

/// Seeded walk started at the center with steps uniform in [-step, step]^q,
/// reflected radially (euclidean) back into the ball of the given radius.
struct BoundedWalk {
  std::uint64_t seed = 0;
  Point center;
  double step = 0.5;
  double radius = 1.0;
  friend bool operator==(const BoundedWalk&, const BoundedWalk&) = default;
};

/// x_n = start + n * velocity. Unbounded control family.
struct Drift {
  Point start, velocity;
  friend bool operator==(const Drift&, const Drift&) = default;
};

struct Table {
  std::vector<Point> points;
  friend bool operator==(const Table&, const Table&) = default;
};

}  // namespace families

/// Deterministic generator of points x_1, x_2, ... (index origin 1).
class SequenceSpec {
 public:
  using Family = std::variant<families::Oscillating, families::Decay, families::OscDecay,
                              families::BoundedWalk, families::Drift, families::Table>;

  /// Throws InputError when the family invariants fail (ratio outside (0, 1),
  /// radius <= 0, empty table, inconsistent point sizes).
  explicit SequenceSpec(Family family);

  static SequenceSpec oscillating(Point a, Point b);
  static SequenceSpec decay(Point center, Point direction, double amplitude, double ratio);
  static SequenceSpec osc_decay(Point center, Point direction, double base, double transient,
                                double ratio);
  static SequenceSpec bounded_walk(std::uint64_t seed, Point center, double step, double radius);
  static SequenceSpec drift(Point start, Point velocity);
  static SequenceSpec table(std::vector<Point> points);

  const Family& family() const noexcept { return family_; }
  std::string family_name() const;
  std::size_t point_dim() const noexcept;

  /// Number of terms available; unbounded families report SIZE_MAX.
  std::size_t length() const noexcept;

  /// Throws InputError unless every generated point can lie in `space`
  /// (labels are only produced by Oscillating and Table).
  void require_in(const PointSpace& space) const;

  friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;

 private:
  Family family_;
};

/// x_n for n >= 1. Throws InputError for n = 0 or n beyond a table.
Point generate(const SequenceSpec& seq, std::size_t n);

/// x_1 .. x_count in order; linear in count for every family.
std::vector<Point> generate_prefix(const SequenceSpec& seq, std::size_t count);

}  // namespace roughcone
