#include "roughcone/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "roughcone/error.hpp"
#include "roughcone/random.hpp"

namespace roughcone {

namespace cones {
bool operator==(const Product& a, const Product& b) { return a.parts == b.parts; }
}  // namespace cones

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> v) noexcept { return std::sqrt(dot(v, v)); }

double sup_abs(std::span<const double> v) noexcept {
  double m = 0.0;
  for (double c : v) m = std::max(m, std::abs(c));
  return m;
}

bool nonzero(std::span<const double> v) noexcept {
  return std::any_of(v.begin(), v.end(), [](double c) { return c != 0.0; });
}

std::size_t rep_dim(const Cone::Representation& rep) {
  return std::visit(
      [](const auto& r) -> std::size_t {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, cones::Orthant> || std::is_same_v<T, cones::SecondOrder>) {
          return r.dim;
        } else if constexpr (std::is_same_v<T, cones::Polyhedral>) {
          return r.rows.front().size();
        } else {
          std::size_t d = 0;
          for (const auto& p : r.parts) d += p.dim();
          return d;
        }
      },
      rep);
}

void check_margin(double margin) {
  if (!(margin >= 0.0) || !std::isfinite(margin)) {
    throw InputError("interior margin must be a finite value >= 0");
  }
}

// Basis of {v : A v = 0} by reduced row echelon form.
std::vector<std::vector<double>> null_space(const std::vector<std::vector<double>>& rows,
                                            std::size_t dim) {
  auto a = rows;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < a.size(); ++c) {
    std::size_t best = r;
    for (std::size_t i = r; i < a.size(); ++i) {
      if (std::abs(a[i][c]) > std::abs(a[best][c])) best = i;
    }
    if (std::abs(a[best][c]) < 1e-12) continue;
    std::swap(a[r], a[best]);
    const double piv = a[r][c];
    for (double& x : a[r]) x /= piv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0.0) continue;
      const double f = a[i][c];
      for (std::size_t k = 0; k < dim; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<std::vector<double>> basis;
  for (std::size_t free = 0; free < dim; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<double> v(dim, 0.0);
    v[free] = 1.0;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

Cone::Cone(Representation rep, double margin)
    : rep_(std::move(rep)), margin_(margin), dim_(rep_dim(rep_)) {
  check_margin(margin);
}

Cone Cone::orthant(std::size_t dim, double margin) {
  if (dim == 0) throw InputError("orthant dimension must be >= 1");
  return Cone(cones::Orthant{dim}, margin);
}

Cone Cone::polyhedral(std::vector<std::vector<double>> rows, double margin) {
  if (rows.empty()) throw InputError("polyhedral cone needs at least one facet row");
  const std::size_t dim = rows.front().size();
  if (dim == 0) throw InputError("polyhedral cone rows must be nonempty");
  for (const auto& row : rows) {
    if (row.size() != dim) throw InputError("polyhedral cone rows must share one dimension");
    for (double x : row) {
      if (!std::isfinite(x)) throw InputError("polyhedral cone rows must be finite");
    }
    if (!nonzero(row)) throw InputError("polyhedral cone has a zero facet row");
  }
  return Cone(cones::Polyhedral{std::move(rows)}, margin);
}

Cone Cone::second_order(std::size_t dim, double margin) {
  if (dim < 2) throw InputError("second-order cone dimension must be >= 2");
  return Cone(cones::SecondOrder{dim}, margin);
}

Cone Cone::product(std::vector<Cone> parts, double margin) {
  if (parts.empty()) throw InputError("product cone needs at least one part");
  return Cone(cones::Product{std::move(parts)}, margin);
}

Cone Cone::with_margin(double margin) const { return Cone(rep_, margin); }

std::string Cone::kind_name() const {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, cones::Orthant>) return "orthant";
        else if constexpr (std::is_same_v<T, cones::Polyhedral>) return "polyhedral";
        else if constexpr (std::is_same_v<T, cones::SecondOrder>) return "second-order";
        else return "product";
      },
      rep_);
}

double Cone::slack_unchecked(std::span<const double> v) const {
  return std::visit(
      [v](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, cones::Orthant>) {
          return *std::min_element(v.begin(), v.end());
        } else if constexpr (std::is_same_v<T, cones::Polyhedral>) {
          double m = kInf;
          for (const auto& row : r.rows) m = std::min(m, dot(row, v));
          return m;
        } else if constexpr (std::is_same_v<T, cones::SecondOrder>) {
          return v[0] - norm2(v.subspan(1));
        } else {
          double m = kInf;
          std::size_t off = 0;
          for (const auto& p : r.parts) {
            m = std::min(m, p.slack_unchecked(v.subspan(off, p.dim())));
            off += p.dim();
          }
          return m;
        }
      },
      rep_);
}

double Cone::slack(std::span<const double> v) const {
  require_same_dim(dim_, v.size(), "cone slack");
  return slack_unchecked(v);
}

bool Cone::contains(std::span<const double> v) const {
  require_same_dim(dim_, v.size(), "cone membership");
  return slack_unchecked(v) >= 0.0;
}

bool Cone::interior_contains(std::span<const double> v) const {
  require_same_dim(dim_, v.size(), "cone interior membership");
  return slack_unchecked(v) > margin_;
}

bool Cone::contains_within(std::span<const double> v, double tol) const {
  require_same_dim(dim_, v.size(), "cone membership");
  return slack_unchecked(v) >= -tol;
}

double Cone::gauge(std::span<const double> v, std::span<const double> e) const {
  require_same_dim(dim_, v.size(), "cone gauge");
  require_same_dim(dim_, e.size(), "cone gauge witness");
  if (!(slack_unchecked(e) > 0.0)) throw InputError("gauge witness must lie in int P");
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, cones::Orthant>) {
          double g = -kInf;
          for (std::size_t i = 0; i < v.size(); ++i) g = std::max(g, v[i] / e[i]);
          return g;
        } else if constexpr (std::is_same_v<T, cones::Polyhedral>) {
          double g = -kInf;
          for (const auto& row : r.rows) g = std::max(g, dot(row, v) / dot(row, e));
          return g;
        } else if constexpr (std::is_same_v<T, cones::SecondOrder>) {
          // lambda*e - v on the boundary: largest root of
          // (a^2 - |c|^2) l^2 - 2 (a b - c.w) l + (b^2 - |w|^2) = 0.
          const double a = e[0], b = v[0];
          const auto c = e.subspan(1), w = v.subspan(1);
          const double qa = a * a - dot(c, c);
          const double qb = a * b - dot(c, w);
          const double qc = b * b - dot(w, w);
          const double disc = std::max(0.0, qb * qb - qa * qc);
          return (qb + std::sqrt(disc)) / qa;
        } else {
          double g = -kInf;
          std::size_t off = 0;
          for (const auto& p : r.parts) {
            g = std::max(g, p.gauge(v.subspan(off, p.dim()), e.subspan(off, p.dim())));
            off += p.dim();
          }
          return g;
        }
      },
      rep_);
}

double Cone::max_step(std::span<const double> v, std::span<const double> dir) const {
  require_same_dim(dim_, v.size(), "cone step");
  require_same_dim(dim_, dir.size(), "cone step direction");
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, cones::Orthant>) {
          double s = kInf;
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (dir[i] < 0.0) s = std::min(s, std::max(0.0, v[i]) / -dir[i]);
          }
          return s;
        } else if constexpr (std::is_same_v<T, cones::Polyhedral>) {
          double s = kInf;
          for (const auto& row : r.rows) {
            const double rate = dot(row, dir);
            if (rate < 0.0) s = std::min(s, std::max(0.0, dot(row, v)) / -rate);
          }
          return s;
        } else if constexpr (std::is_same_v<T, cones::SecondOrder>) {
          std::vector<double> probe(v.size());
          auto feasible = [&](double s) {
            for (std::size_t i = 0; i < v.size(); ++i) probe[i] = v[i] + s * dir[i];
            return slack_unchecked(probe) >= 0.0;
          };
          double hi = 1.0;
          while (feasible(hi)) {
            hi *= 2.0;
            if (hi > 0x1.0p60) return kInf;
          }
          double lo = 0.0;
          for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (feasible(mid) ? lo : hi) = mid;
          }
          return lo;
        } else {
          double s = kInf;
          std::size_t off = 0;
          for (const auto& p : r.parts) {
            s = std::min(s, p.max_step(v.subspan(off, p.dim()), dir.subspan(off, p.dim())));
            off += p.dim();
          }
          return s;
        }
      },
      rep_);
}

VectorE Cone::default_interior_witness() const {
  std::vector<double> w = std::visit(
      [&](const auto& r) -> std::vector<double> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, cones::Orthant>) {
          return std::vector<double>(r.dim, 1.0);
        } else if constexpr (std::is_same_v<T, cones::SecondOrder>) {
          std::vector<double> x(r.dim, 0.0);
          x[0] = 1.0;
          return x;
        } else if constexpr (std::is_same_v<T, cones::Polyhedral>) {
          std::vector<double> ones(dim_, 1.0);
          if (slack_unchecked(ones) > 0.0) return ones;
          // Search for the direction with the best slack per unit length.
          Rng rng(0x5eedULL);
          std::vector<double> best, cand(dim_);
          double best_ratio = 0.0;
          for (int t = 0; t < 4096; ++t) {
            for (double& c : cand) c = rng.normal();
            const double ratio = slack_unchecked(cand) / norm2(cand);
            if (ratio > best_ratio) {
              best_ratio = ratio;
              best = cand;
            }
          }
          if (best.empty()) throw InputError("polyhedral cone has empty interior");
          const double scale = 1.0 / sup_abs(best);
          for (double& c : best) c *= scale;
          return best;
        } else {
          std::vector<double> x;
          for (const auto& p : r.parts) {
            const auto pw = p.default_interior_witness();
            x.insert(x.end(), pw.coords().begin(), pw.coords().end());
          }
          return x;
        }
      },
      rep_);
  const double s = slack_unchecked(w);
  if (!(s > margin_)) {
    if (!(s > 0.0)) throw InputError("cone has no interior witness");
    const double scale = 2.0 * margin_ / s;
    for (double& c : w) c *= scale;
  }
  return VectorE(std::move(w));
}

bool Cone::sample_member(Rng& rng, std::span<double> out) const {
  require_same_dim(dim_, out.size(), "cone sampler");
  return std::visit(
      [&](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, cones::Orthant>) {
          const bool boundary = rng.chance(0.25);
          for (double& c : out) {
            c = std::abs(rng.normal());
            if (boundary && rng.chance(0.5)) c = 0.0;
          }
          return true;
        } else if constexpr (std::is_same_v<T, cones::SecondOrder>) {
          for (std::size_t i = 1; i < out.size(); ++i) out[i] = rng.normal();
          const double lift = rng.chance(0.25) ? 0.0 : std::abs(rng.normal());
          out[0] = norm2(out.subspan(1)) + lift;
          return true;
        } else if constexpr (std::is_same_v<T, cones::Polyhedral>) {
          for (int t = 0; t < 256; ++t) {
            for (double& c : out) c = rng.normal();
            if (slack_unchecked(out) >= 0.0 && nonzero(out)) return true;
          }
          // Fall back to coordinate probes and facet normals.
          std::vector<std::vector<double>> probes;
          for (std::size_t i = 0; i < dim_; ++i) {
            std::vector<double> u(dim_, 0.0);
            u[i] = 1.0;
            probes.push_back(u);
            u[i] = -1.0;
            probes.push_back(u);
          }
          for (const auto& row : r.rows) {
            probes.push_back(row);
            std::vector<double> neg = row;
            for (double& c : neg) c = -c;
            probes.push_back(std::move(neg));
          }
          std::vector<const std::vector<double>*> members;
          for (const auto& p : probes) {
            if (slack_unchecked(p) >= 0.0) members.push_back(&p);
          }
          if (members.empty()) return false;
          const auto& pick = *members[rng.below(members.size())];
          const double scale = std::abs(rng.normal()) + 0.1;
          for (std::size_t i = 0; i < dim_; ++i) out[i] = pick[i] * scale;
          return true;
        } else {
          std::size_t off = 0;
          for (const auto& p : r.parts) {
            if (!p.sample_member(rng, out.subspan(off, p.dim()))) return false;
            off += p.dim();
          }
          return true;
        }
      },
      rep_);
}

bool leq(const Cone& cone, std::span<const double> x, std::span<const double> y) {
  require_same_dim(cone.dim(), x.size(), "leq");
  require_same_dim(cone.dim(), y.size(), "leq");
  std::vector<double> diff(x.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = y[i] - x[i];
  return cone.contains(diff);
}

bool ll(const Cone& cone, std::span<const double> x, std::span<const double> y) {
  require_same_dim(cone.dim(), x.size(), "ll");
  require_same_dim(cone.dim(), y.size(), "ll");
  std::vector<double> diff(x.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = y[i] - x[i];
  return cone.interior_contains(diff);
}

namespace {

struct Found {
  std::vector<double> witness;
  bool sampled = false;
};

std::vector<std::vector<double>> coordinate_probes(const Cone& cone) {
  std::vector<std::vector<double>> probes;
  const std::size_t m = cone.dim();
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> u(m, 0.0);
    u[i] = 1.0;
    probes.push_back(u);
    u[i] = -1.0;
    probes.push_back(u);
  }
  probes.emplace_back(m, 1.0);
  probes.emplace_back(m, -1.0);
  return probes;
}

std::optional<Found> find_nonzero_member(const Cone& cone, Rng& rng, std::size_t trials) {
  return std::visit(
      [&](const auto& r) -> std::optional<Found> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, cones::Orthant> || std::is_same_v<T, cones::SecondOrder>) {
          return Found{cone.default_interior_witness().coords(), false};
        } else if constexpr (std::is_same_v<T, cones::Polyhedral>) {
          auto probes = coordinate_probes(cone);
          for (const auto& row : r.rows) {
            probes.push_back(row);
            std::vector<double> neg = row;
            for (double& c : neg) c = -c;
            probes.push_back(std::move(neg));
          }
          for (const auto& b : null_space(r.rows, cone.dim())) probes.push_back(b);
          for (const auto& p : probes) {
            if (nonzero(p) && cone.contains(p)) return Found{p, true};
          }
          std::vector<double> v(cone.dim());
          for (std::size_t t = 0; t < trials; ++t) {
            for (double& c : v) c = rng.normal();
            if (nonzero(v) && cone.contains(v)) return Found{v, true};
          }
          return std::nullopt;
        } else {
          std::size_t off = 0;
          for (const auto& p : r.parts) {
            if (auto f = find_nonzero_member(p, rng, trials)) {
              std::vector<double> w(cone.dim(), 0.0);
              std::copy(f->witness.begin(), f->witness.end(), w.begin() + off);
              return Found{std::move(w), f->sampled};
            }
            off += p.dim();
          }
          return std::nullopt;
        }
      },
      cone.representation());
}

// Returns a nonzero v with v, -v in P, or nullopt. `sampled` reports whether
// the search relied on sampling.
std::optional<std::vector<double>> find_line(const Cone& cone, Rng& rng, std::size_t trials,
                                             bool& sampled) {
  return std::visit(
      [&](const auto& r) -> std::optional<std::vector<double>> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, cones::Orthant> || std::is_same_v<T, cones::SecondOrder>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, cones::Polyhedral>) {
          sampled = true;
          auto probes = coordinate_probes(cone);
          for (const auto& b : null_space(r.rows, cone.dim())) probes.push_back(b);
          std::vector<double> neg(cone.dim());
          auto is_line = [&](const std::vector<double>& v) {
            for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
            return nonzero(v) && cone.contains(v) && cone.contains(neg);
          };
          for (const auto& p : probes) {
            if (is_line(p)) return p;
          }
          std::vector<double> v(cone.dim());
          for (std::size_t t = 0; t < trials; ++t) {
            for (double& c : v) c = rng.normal();
            if (is_line(v)) return v;
          }
          return std::nullopt;
        } else {
          std::size_t off = 0;
          for (const auto& p : r.parts) {
            if (auto l = find_line(p, rng, trials, sampled)) {
              std::vector<double> w(cone.dim(), 0.0);
              std::copy(l->begin(), l->end(), w.begin() + off);
              return w;
            }
            off += p.dim();
          }
          return std::nullopt;
        }
      },
      cone.representation());
}

}  // namespace

ValidationReport validate_cone(const Cone& cone, std::uint64_t seed, std::size_t trials) {
  if (trials == 0) throw InputError("validate_cone: trials must be >= 1");
  ValidationReport report;
  report.subject = "cone:" + cone.kind_name();

  {
    Rng rng(derive_seed(seed, 1, 0));
    AxiomCheck check{"nontrivial", true, false, 0, "", {}};
    if (auto found = find_nonzero_member(cone, rng, trials)) {
      check.sampled = found->sampled;
      check.checks = 1;
      check.detail = "nonzero member " + VectorE(found->witness).to_string();
    } else {
      check.passed = false;
      check.sampled = true;
      check.checks = trials;
      check.detail = "no nonzero member found; P = {0} suspected";
    }
    report.axioms.push_back(std::move(check));
  }

  {
    Rng rng(derive_seed(seed, 2, 0));
    AxiomCheck check{"convex-combination", true, true, 0, "", {}};
    std::vector<double> v(cone.dim()), w(cone.dim()), comb(cone.dim());
    for (std::size_t t = 0; t < trials && check.passed; ++t) {
      if (!cone.sample_member(rng, v) || !cone.sample_member(rng, w)) continue;
      const double a = rng.chance(0.1) ? 0.0 : rng.uniform(0.0, 10.0);
      const double b = rng.chance(0.1) ? 0.0 : rng.uniform(0.0, 10.0);
      for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = a * v[i] + b * w[i];
      ++check.checks;
      const double tol = 1e-12 * (1.0 + a * sup_abs(v) + b * sup_abs(w));
      if (!cone.contains_within(comb, tol)) {
        check.passed = false;
        check.detail = "a*v + b*w left P with a=" + std::to_string(a) + ", b=" + std::to_string(b);
        check.witness = {VectorE(v), VectorE(w)};
      }
    }
    if (check.passed && check.checks == 0) check.detail = "no members could be sampled";
    report.axioms.push_back(std::move(check));
  }

  {
    Rng rng(derive_seed(seed, 3, 0));
    AxiomCheck check{"pointed", true, false, 0, "", {}};
    if (auto line = find_line(cone, rng, trials, check.sampled)) {
      check.passed = false;
      check.detail = "v and -v both lie in P";
      check.witness = {VectorE(*line)};
    }
    check.checks = check.sampled ? trials : 1;
    report.axioms.push_back(std::move(check));
  }
  return report;
}

}  // namespace roughcone
