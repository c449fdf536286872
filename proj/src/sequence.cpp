#include "roughcone/sequence.hpp"

#include <cmath>
#include <optional>

#include "roughcone/error.hpp"
#include "roughcone/random.hpp"

namespace roughcone {

namespace {

void require_finite(const Point& p, const char* what) {
  if (p.empty()) throw InputError(std::string(what) + " must have at least one coordinate");
  for (double c : p) {
    if (!std::isfinite(c)) throw InputError(std::string(what) + " must be finite");
  }
}

void require_same(const Point& a, const Point& b, const char* what) {
  if (a.size() != b.size()) throw InputError(std::string(what) + ": point sizes differ");
}

void require_ratio(double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw InputError("sequence ratio must lie in (0, 1)");
}

void require_scalar(double v, const char* what) {
  if (!std::isfinite(v)) throw InputError(std::string(what) + " must be finite");
}

}  // namespace

SequenceSpec::SequenceSpec(Family family) : family_(std::move(family)) {
  std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, families::Oscillating>) {
          require_finite(f.a, "oscillating a");
          require_finite(f.b, "oscillating b");
          require_same(f.a, f.b, "oscillating");
        } else if constexpr (std::is_same_v<T, families::Decay>) {
          require_finite(f.center, "decay center");
          require_finite(f.direction, "decay direction");
          require_same(f.center, f.direction, "decay");
          require_scalar(f.amplitude, "decay amplitude");
          require_ratio(f.ratio);
        } else if constexpr (std::is_same_v<T, families::OscDecay>) {
          require_finite(f.center, "osc-decay center");
          require_finite(f.direction, "osc-decay direction");
          require_same(f.center, f.direction, "osc-decay");
          if (!(f.base >= 0.0) || !(f.transient >= 0.0) || !std::isfinite(f.base + f.transient)) {
            throw InputError("osc-decay base and transient must be >= 0");
          }
          require_ratio(f.ratio);
        } else if constexpr (std::is_same_v<T, families::BoundedWalk>) {
          require_finite(f.center, "walk center");
          if (!(f.radius > 0.0) || !std::isfinite(f.radius)) {
            throw InputError("walk radius must be > 0");
          }
          if (!(f.step >= 0.0) || !std::isfinite(f.step)) throw InputError("walk step must be >= 0");
        } else if constexpr (std::is_same_v<T, families::Drift>) {
          require_finite(f.start, "drift start");
          require_finite(f.velocity, "drift velocity");
          require_same(f.start, f.velocity, "drift");
        } else {
          if (f.points.empty()) throw InputError("table sequence must be nonempty");
          for (const auto& p : f.points) {
            require_finite(p, "table point");
            require_same(p, f.points.front(), "table sequence");
          }
        }
      },
      family_);
}

SequenceSpec SequenceSpec::oscillating(Point a, Point b) {
  return SequenceSpec(families::Oscillating{std::move(a), std::move(b)});
}

SequenceSpec SequenceSpec::decay(Point center, Point direction, double amplitude, double ratio) {
  return SequenceSpec(families::Decay{std::move(center), std::move(direction), amplitude, ratio});
}

SequenceSpec SequenceSpec::osc_decay(Point center, Point direction, double base,
                                     double transient, double ratio) {
  return SequenceSpec(
      families::OscDecay{std::move(center), std::move(direction), base, transient, ratio});
}

SequenceSpec SequenceSpec::bounded_walk(std::uint64_t seed, Point center, double step,
                                        double radius) {
  return SequenceSpec(families::BoundedWalk{seed, std::move(center), step, radius});
}

SequenceSpec SequenceSpec::drift(Point start, Point velocity) {
  return SequenceSpec(families::Drift{std::move(start), std::move(velocity)});
}

SequenceSpec SequenceSpec::table(std::vector<Point> points) {
  return SequenceSpec(families::Table{std::move(points)});
}

std::string SequenceSpec::family_name() const {
  static const char* names[] = {"oscillating", "decay", "osc-decay", "bounded-walk", "drift",
                                "table"};
  return names[family_.index()];
}

std::size_t SequenceSpec::point_dim() const noexcept {
  return std::visit(
      [](const auto& f) -> std::size_t {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, families::Oscillating>) return f.a.size();
        else if constexpr (std::is_same_v<T, families::Decay> ||
                           std::is_same_v<T, families::OscDecay> ||
                           std::is_same_v<T, families::BoundedWalk>)
          return f.center.size();
        else if constexpr (std::is_same_v<T, families::Drift>) return f.start.size();
        else return f.points.front().size();
      },
      family_);
}

std::size_t SequenceSpec::length() const noexcept {
  if (const auto* t = std::get_if<families::Table>(&family_)) return t->points.size();
  return std::numeric_limits<std::size_t>::max();
}

void SequenceSpec::require_in(const PointSpace& space) const {
  const bool labeled_ok = std::holds_alternative<families::Oscillating>(family_) ||
                          std::holds_alternative<families::Table>(family_);
  if (space.kind == PointSpace::Kind::FiniteLabeled) {
    if (!labeled_ok) {
      throw InputError(family_name() + " sequences need a RealVector space");
    }
    if (const auto* o = std::get_if<families::Oscillating>(&family_)) {
      space.require(o->a, "oscillating a");
      space.require(o->b, "oscillating b");
    } else {
      for (const auto& p : std::get<families::Table>(family_).points) {
        space.require(p, "table point");
      }
    }
    return;
  }
  if (point_dim() != space.point_dim()) {
    throw InputError(family_name() + " sequence: point dimension " + std::to_string(point_dim()) +
                     " does not match space dimension " + std::to_string(space.point_dim()));
  }
}

namespace {

class Generator {
 public:
  explicit Generator(const SequenceSpec& seq) : seq_(seq) {}

  // Writes x_n; for walks, n must advance by one from the previous call.
  Point next(std::size_t n) {
    return std::visit([&](const auto& f) { return term(f, n); }, seq_.family());
  }

 private:
  Point term(const families::Oscillating& f, std::size_t n) { return n % 2 == 0 ? f.a : f.b; }

  Point term(const families::Decay& f, std::size_t n) {
    const double s = f.amplitude * std::pow(f.ratio, static_cast<double>(n));
    Point x(f.center.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = f.center[i] + s * f.direction[i];
    return x;
  }

  Point term(const families::OscDecay& f, std::size_t n) {
    const double profile = f.base + f.transient * std::pow(f.ratio, static_cast<double>(n));
    const double s = n % 2 == 0 ? profile : -profile;
    Point x(f.center.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = f.center[i] + s * f.direction[i];
    return x;
  }

  Point term(const families::BoundedWalk& f, std::size_t n) {
    if (n == 1 || walk_.empty()) {
      rng_.emplace(f.seed);
      walk_ = f.center;
      walked_ = 1;
    }
    while (walked_ < n) {
      const std::size_t q = walk_.size();
      double r2 = 0.0;
      for (std::size_t i = 0; i < q; ++i) {
        walk_[i] += rng_->uniform(-f.step, f.step);
        const double off = walk_[i] - f.center[i];
        r2 += off * off;
      }
      const double r = std::sqrt(r2);
      if (r > f.radius) {
        const double target = std::min(f.radius, std::max(0.0, 2.0 * f.radius - r));
        const double shrink = target / r;
        for (std::size_t i = 0; i < q; ++i) {
          walk_[i] = f.center[i] + (walk_[i] - f.center[i]) * shrink;
        }
      }
      ++walked_;
    }
    return walk_;
  }

  Point term(const families::Drift& f, std::size_t n) {
    Point x(f.start.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = f.start[i] + static_cast<double>(n) * f.velocity[i];
    }
    return x;
  }

  Point term(const families::Table& f, std::size_t n) { return f.points[n - 1]; }

  const SequenceSpec& seq_;
  std::optional<Rng> rng_;
  Point walk_;
  std::size_t walked_ = 0;
};

}  // namespace

Point generate(const SequenceSpec& seq, std::size_t n) {
  if (n == 0) throw InputError("sequence index must be >= 1");
  if (n > seq.length()) throw InputError("sequence index beyond table length");
  Generator gen(seq);
  if (std::holds_alternative<families::BoundedWalk>(seq.family())) {
    Point x;
    for (std::size_t k = 1; k <= n; ++k) x = gen.next(k);
    return x;
  }
  return gen.next(n);
}

std::vector<Point> generate_prefix(const SequenceSpec& seq, std::size_t count) {
  if (count > seq.length()) throw InputError("sequence prefix beyond table length");
  Generator gen(seq);
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) pts.push_back(gen.next(n));
  return pts;
}

}  // namespace roughcone
