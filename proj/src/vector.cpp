#include "roughcone/vector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "roughcone/error.hpp"

namespace roughcone {

VectorE::VectorE(std::initializer_list<double> coords) : coords_(coords) { check_finite(); }

VectorE::VectorE(std::vector<double> coords) : coords_(std::move(coords)) { check_finite(); }

VectorE::VectorE(std::span<const double> coords) : coords_(coords.begin(), coords.end()) {
  check_finite();
}

VectorE VectorE::zeros(std::size_t dim) { return filled(dim, 0.0); }
VectorE VectorE::ones(std::size_t dim) { return filled(dim, 1.0); }

VectorE VectorE::filled(std::size_t dim, double value) {
  return VectorE(std::vector<double>(dim, value));
}

VectorE VectorE::unit(std::size_t dim, std::size_t axis) {
  std::vector<double> c(dim, 0.0);
  if (axis >= dim) throw InputError("unit vector axis out of range");
  c[axis] = 1.0;
  return VectorE(std::move(c));
}

void VectorE::check_finite() const {
  if (coords_.empty()) throw InputError("vector must have at least one coordinate");
  for (double c : coords_) {
    if (!std::isfinite(c)) throw InputError("vector coordinates must be finite");
  }
}

bool VectorE::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](double c) { return c == 0.0; });
}

VectorE& VectorE::operator+=(const VectorE& other) {
  require_same_dim(dim(), other.dim(), "vector addition");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  check_finite();
  return *this;
}

VectorE& VectorE::operator-=(const VectorE& other) {
  require_same_dim(dim(), other.dim(), "vector subtraction");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  check_finite();
  return *this;
}

VectorE& VectorE::operator*=(double s) {
  for (double& c : coords_) c *= s;
  check_finite();
  return *this;
}

std::string VectorE::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out << ", ";
    out << coords_[i];
  }
  out << ')';
  return out.str();
}

void require_same_dim(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw InputError(std::string(what) + ": dimension mismatch (expected " +
                     std::to_string(expected) + ", got " + std::to_string(actual) + ")");
  }
}

bool approx_equal(std::span<const double> a, std::span<const double> b, double tol) noexcept {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

NormSpec NormSpec::p_norm(double p) {
  NormSpec n{NormKind::P, p, {}};
  if (!(p >= 1.0) || !std::isfinite(p)) throw InputError("p-norm exponent must be >= 1");
  return n;
}

NormSpec NormSpec::weighted_sup(std::vector<double> weights) {
  NormSpec n{NormKind::WeightedSup, 2.0, std::move(weights)};
  n.validate(n.weights.size());
  return n;
}

void NormSpec::validate(std::size_t dim) const {
  switch (kind) {
    case NormKind::Euclidean:
    case NormKind::Sup:
      return;
    case NormKind::P:
      if (!(p >= 1.0) || !std::isfinite(p)) throw InputError("p-norm exponent must be >= 1");
      return;
    case NormKind::WeightedSup:
      if (weights.size() != dim) {
        throw InputError("weighted-sup norm needs one weight per coordinate");
      }
      for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) throw InputError("norm weights must be positive");
      }
      return;
  }
}

double NormSpec::operator()(std::span<const double> v) const {
  switch (kind) {
    case NormKind::Euclidean: {
      double s = 0.0;
      for (double c : v) s += c * c;
      return std::sqrt(s);
    }
    case NormKind::Sup: {
      double m = 0.0;
      for (double c : v) m = std::max(m, std::abs(c));
      return m;
    }
    case NormKind::P: {
      double s = 0.0;
      for (double c : v) s += std::pow(std::abs(c), p);
      return std::pow(s, 1.0 / p);
    }
    case NormKind::WeightedSup: {
      require_same_dim(weights.size(), v.size(), "weighted-sup norm");
      double m = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) m = std::max(m, weights[i] * std::abs(v[i]));
      return m;
    }
  }
  return 0.0;
}

std::string NormSpec::name() const {
  switch (kind) {
    case NormKind::Euclidean:
      return "euclidean";
    case NormKind::Sup:
      return "sup";
    case NormKind::P:
      return "p";
    case NormKind::WeightedSup:
      return "weighted-sup";
  }
  return "?";
}

}  // namespace roughcone
