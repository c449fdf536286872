#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace roughcone {

/// An element of the ambient space E = R^m. Coordinates are always finite and
/// there is at least one of them.
class VectorE {
 public:
  VectorE(std::initializer_list<double> coords);
  explicit VectorE(std::vector<double> coords);
  explicit VectorE(std::span<const double> coords);

  static VectorE zeros(std::size_t dim);
  static VectorE ones(std::size_t dim);
  static VectorE filled(std::size_t dim, double value);
  static VectorE unit(std::size_t dim, std::size_t axis);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }
  const std::vector<double>& coords() const noexcept { return coords_; }
  std::span<const double> span() const noexcept { return coords_; }
  operator std::span<const double>() const noexcept { return coords_; }

  bool is_zero() const noexcept;

  VectorE& operator+=(const VectorE& other);
  VectorE& operator-=(const VectorE& other);
  VectorE& operator*=(double s);

  friend VectorE operator+(VectorE a, const VectorE& b) { return a += b; }
  friend VectorE operator-(VectorE a, const VectorE& b) { return a -= b; }
  friend VectorE operator-(VectorE a) { return a *= -1.0; }
  friend VectorE operator*(VectorE a, double s) { return a *= s; }
  friend VectorE operator*(double s, VectorE a) { return a *= s; }
  friend VectorE operator/(VectorE a, double s) { return a *= (1.0 / s); }

  friend bool operator==(const VectorE&, const VectorE&) = default;

  std::string to_string() const;

 private:
  void check_finite() const;

  std::vector<double> coords_;
};

/// Throws InputError unless the two dimensions agree. `what` names the
/// operation for the message.
void require_same_dim(std::size_t expected, std::size_t actual, const char* what);

/// Per-coordinate comparison with absolute tolerance.
bool approx_equal(std::span<const double> a, std::span<const double> b, double tol) noexcept;

enum class NormKind { Euclidean, Sup, P, WeightedSup };

/// A catalogued norm on R^m. Every kind here is absolute (depends only on
/// |v_i|) and monotone in each |v_i|.
struct NormSpec {
  NormKind kind = NormKind::Euclidean;
  double p = 2.0;               // used by NormKind::P
  std::vector<double> weights;  // used by NormKind::WeightedSup

  static NormSpec euclidean() { return {}; }
  static NormSpec sup() { return {NormKind::Sup, 2.0, {}}; }
  static NormSpec p_norm(double p);
  static NormSpec weighted_sup(std::vector<double> weights);

  /// Throws InputError when p < 1, a weight is not positive, or the weight
  /// count does not match `dim`.
  void validate(std::size_t dim) const;

  double operator()(std::span<const double> v) const;

  std::string name() const;

  friend bool operator==(const NormSpec&, const NormSpec&) = default;
};

}  // namespace roughcone
