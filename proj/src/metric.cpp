#include "roughcone/metric.hpp"

#include <algorithm>
#include <cmath>

#include "roughcone/error.hpp"
#include "roughcone/random.hpp"

namespace roughcone {

PointSpace PointSpace::real_vector(std::size_t q) {
  if (q == 0) throw InputError("RealVector space needs q >= 1");
  return {Kind::RealVector, q};
}

PointSpace PointSpace::finite_labeled(std::size_t n) {
  if (n == 0) throw InputError("FiniteLabeled space needs n >= 1");
  return {Kind::FiniteLabeled, n};
}

bool PointSpace::contains(std::span<const double> p) const noexcept {
  if (p.size() != point_dim()) return false;
  if (kind == Kind::RealVector) {
    return std::all_of(p.begin(), p.end(), [](double c) { return std::isfinite(c); });
  }
  const double label = p[0];
  return label >= 0.0 && label < static_cast<double>(size) && std::floor(label) == label;
}

void PointSpace::require(std::span<const double> p, const char* what) const {
  if (!contains(p)) throw InputError(std::string(what) + ": point is not in the space");
}

std::string to_string(BaseMetric base) {
  switch (base) {
    case BaseMetric::Euclidean:
      return "euclidean";
    case BaseMetric::Sup:
      return "sup";
    case BaseMetric::Discrete:
      return "discrete";
  }
  return "?";
}

namespace {

double base_rho(BaseMetric base, std::span<const double> x, std::span<const double> y) noexcept {
  switch (base) {
    case BaseMetric::Euclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case BaseMetric::Sup: {
      double m = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
      return m;
    }
    case BaseMetric::Discrete:
      return std::equal(x.begin(), x.end(), y.begin()) ? 0.0 : 1.0;
  }
  return 0.0;
}

}  // namespace

ConeMetricSpec::ConeMetricSpec(PointSpace space, Cone cone, NormSpec norm, Rule rule)
    : space_(space), cone_(std::move(cone)), norm_(std::move(norm)), rule_(std::move(rule)) {
  norm_.validate(cone_.dim());
}

ConeMetricSpec ConeMetricSpec::lifted(std::size_t q, BaseMetric base, VectorE witness, Cone cone,
                                      NormSpec norm) {
  require_same_dim(cone.dim(), witness.dim(), "lifted metric witness");
  if (witness.is_zero()) throw InputError("lifted metric witness e must be nonzero");
  if (!cone.contains(witness)) throw InputError("lifted metric witness e must lie in P");
  return ConeMetricSpec(PointSpace::real_vector(q), std::move(cone), std::move(norm),
                        rules::Lifted{base, std::move(witness)});
}

ConeMetricSpec ConeMetricSpec::two_component(double alpha, NormSpec norm) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw InputError("two-component alpha must be >= 0");
  }
  return ConeMetricSpec(PointSpace::real_vector(1), Cone::orthant(2), std::move(norm),
                        rules::TwoComponent{alpha});
}

ConeMetricSpec ConeMetricSpec::table(std::vector<std::vector<VectorE>> values, Cone cone,
                                     NormSpec norm) {
  const std::size_t n = values.size();
  if (n == 0) throw InputError("metric table must be nonempty");
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i].size() != n) throw InputError("metric table must be square");
    for (std::size_t j = 0; j < n; ++j) {
      require_same_dim(cone.dim(), values[i][j].dim(), "metric table entry");
    }
    if (!values[i][i].is_zero()) throw InputError("metric table must have a zero diagonal");
  }
  return ConeMetricSpec(PointSpace::finite_labeled(n), std::move(cone), std::move(norm),
                        rules::Table{std::move(values)});
}

std::string ConeMetricSpec::rule_name() const {
  switch (rule_.index()) {
    case 0:
      return "lifted";
    case 1:
      return "two-component";
    default:
      return "table";
  }
}

void ConeMetricSpec::eval_into(std::span<const double> x, std::span<const double> y,
                               std::span<double> out) const noexcept {
  if (const auto* l = std::get_if<rules::Lifted>(&rule_)) {
    const double rho = base_rho(l->base, x, y);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = rho * l->witness[k];
  } else if (const auto* t = std::get_if<rules::TwoComponent>(&rule_)) {
    const double gap = std::abs(x[0] - y[0]);
    out[0] = gap;
    out[1] = t->alpha * gap;
  } else {
    const auto& table = std::get<rules::Table>(rule_);
    const auto& v = table.values[static_cast<std::size_t>(x[0])][static_cast<std::size_t>(y[0])];
    std::copy(v.coords().begin(), v.coords().end(), out.begin());
  }
}

VectorE ConeMetricSpec::eval(std::span<const double> x, std::span<const double> y) const {
  space_.require(x, "cone metric first argument");
  space_.require(y, "cone metric second argument");
  std::vector<double> out(dim());
  eval_into(x, y, out);
  return VectorE(std::move(out));
}

bool ConeMetricSpec::is_scalar_lift() const noexcept {
  return !std::holds_alternative<rules::Table>(rule_);
}

VectorE ConeMetricSpec::unit_value() const {
  if (const auto* l = std::get_if<rules::Lifted>(&rule_)) return l->witness;
  if (const auto* t = std::get_if<rules::TwoComponent>(&rule_)) return VectorE{1.0, t->alpha};
  throw InputError("table metrics have no unit value");
}

double ConeMetricSpec::base_distance(std::span<const double> x, std::span<const double> y) const {
  space_.require(x, "base distance");
  space_.require(y, "base distance");
  if (const auto* l = std::get_if<rules::Lifted>(&rule_)) return base_rho(l->base, x, y);
  if (std::holds_alternative<rules::TwoComponent>(rule_)) return std::abs(x[0] - y[0]);
  throw InputError("table metrics have no base distance");
}

ValidationReport validate_metric(const ConeMetricSpec& spec, std::span<const Point> sample,
                                 double tau_eq) {
  if (sample.size() < 3) throw InputError("validate_metric: sample needs at least 3 points");
  for (const auto& p : sample) spec.space().require(p, "validate_metric sample");

  const std::size_t n = sample.size();
  const std::size_t m = spec.dim();
  const Cone& cone = spec.cone();
  const bool exact_symmetry = spec.is_scalar_lift();

  std::vector<std::vector<double>> d(n * n, std::vector<double>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) spec.eval_into(sample[i], sample[j], d[i * n + j]);
  }
  auto scale = [](std::span<const double> v) {
    double s = 1.0;
    for (double c : v) s = std::max(s, std::abs(c));
    return s;
  };
  const std::vector<double> zero(m, 0.0);

  ValidationReport report;
  report.subject = "metric:" + spec.rule_name();
  AxiomCheck pos{"d1-positivity", true, false, 0, "", {}};
  AxiomCheck ident{"d1-identity", true, false, 0, "", {}};
  AxiomCheck sym{"d2-symmetry", true, false, 0, "", {}};
  AxiomCheck tri{"d3-triangle", true, false, 0, "", {}};

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& dij = d[i * n + j];
      ++pos.checks;
      if (pos.passed && !cone.contains_within(dij, tau_eq * scale(dij))) {
        pos.passed = false;
        pos.detail = "d(x, y) is not >= 0";
        pos.witness = {VectorE(sample[i]), VectorE(sample[j]), VectorE(dij)};
      }
      ++ident.checks;
      const bool d_zero = approx_equal(dij, zero, tau_eq);
      const bool same = approx_equal(sample[i], sample[j], tau_eq);
      if (ident.passed && d_zero != same) {
        ident.passed = false;
        ident.detail = same ? "d(x, x) is not zero" : "d(x, y) = 0 for x != y";
        ident.witness = {VectorE(sample[i]), VectorE(sample[j])};
      }
      ++sym.checks;
      const auto& dji = d[j * n + i];
      const bool symmetric = exact_symmetry ? dij == dji : approx_equal(dij, dji, tau_eq);
      if (sym.passed && !symmetric) {
        sym.passed = false;
        sym.detail = "d(x, y) != d(y, x)";
        sym.witness = {VectorE(sample[i]), VectorE(sample[j])};
      }
    }
  }

  std::vector<double> defect(m);
  for (std::size_t x = 0; x < n && tri.passed; ++x) {
    for (std::size_t y = 0; y < n && tri.passed; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        const auto& dxy = d[x * n + y];
        const auto& dxz = d[x * n + z];
        const auto& dzy = d[z * n + y];
        for (std::size_t k = 0; k < m; ++k) defect[k] = dxz[k] + dzy[k] - dxy[k];
        ++tri.checks;
        const double tol = tau_eq * std::max({scale(dxy), scale(dxz), scale(dzy)});
        if (!cone.contains_within(defect, tol)) {
          tri.passed = false;
          tri.detail = "d(x, y) <= d(x, z) + d(z, y) fails";
          tri.witness = {VectorE(sample[x]), VectorE(sample[y]), VectorE(sample[z])};
          break;
        }
      }
    }
  }

  report.axioms = {std::move(pos), std::move(ident), std::move(sym), std::move(tri)};
  return report;
}

std::vector<Point> canonical_sample(const ConeMetricSpec& spec) {
  const PointSpace& space = spec.space();
  std::vector<Point> pts;
  if (space.kind == PointSpace::Kind::FiniteLabeled) {
    for (std::size_t i = 0; i < space.size; ++i) pts.push_back({static_cast<double>(i)});
    // Pad small spaces so triangle checks still run; repeats are harmless.
    while (pts.size() < 3) pts.push_back(pts[pts.size() % space.size]);
    return pts;
  }
  const std::size_t q = space.size;
  pts.emplace_back(q, 0.0);
  for (std::size_t i = 0; i < q; ++i) {
    Point u(q, 0.0);
    u[i] = 1.0;
    pts.push_back(u);
    u[i] = -1.0;
    pts.push_back(u);
    u[i] = 2.0;
    pts.push_back(u);
  }
  pts.emplace_back(q, 0.5);
  Rng rng(0xC0FFEEULL);
  for (int k = 0; k < 8; ++k) {
    Point p(q);
    for (double& c : p) c = rng.uniform(-5.0, 5.0);
    pts.push_back(std::move(p));
  }
  return pts;
}

ConeMetricSpec builtin_space(const SpaceParams& params) {
  auto spec = [&] {
    if (params.name == "lifted") {
      return ConeMetricSpec::lifted(params.q, params.base, params.witness, params.cone,
                                    params.norm);
    }
    if (params.name == "two-component") {
      if (!params.cone.is_orthant() || params.cone.dim() != 2) {
        throw InputError("two-component space is ordered by Orthant(2)");
      }
      return ConeMetricSpec::two_component(params.alpha, params.norm);
    }
    if (params.name == "table") {
      return ConeMetricSpec::table(params.table, params.cone, params.norm);
    }
    throw InputError("unknown built-in space '" + params.name + "'");
  }();
  const auto report = validate_metric(spec, canonical_sample(spec));
  if (!report.passed()) {
    std::string failed;
    for (const auto& a : report.axioms) {
      if (!a.passed) failed += (failed.empty() ? "" : ", ") + a.name + " (" + a.detail + ")";
    }
    throw InputError("space '" + params.name + "' fails metric validation: " + failed);
  }
  return spec;
}

}  // namespace roughcone
