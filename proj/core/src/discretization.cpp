#include "beam/discretization.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace beam {

namespace {

void require_same_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(got) +
                                " vs " + std::to_string(want) + ")");
}

}  // namespace

std::string to_string(Scheme scheme) {
  return scheme == Scheme::FiniteDifference ? "fd" : "spectral";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "fd") return Scheme::FiniteDifference;
  if (name == "spectral") return Scheme::SpectralSine;
  throw std::invalid_argument("unknown scheme '" + name + "' (expected fd or spectral)");
}

// ---------------------------------------------------------------------------

Grid::Grid(double a, double b, std::size_t n_interior) : a_(a), b_(b), n_(n_interior) {
  if (!(a < b)) throw std::invalid_argument("grid: a must be less than b");
  if (n_interior < 3) throw std::invalid_argument("grid: n_interior must be at least 3");
  h_ = (b - a) / static_cast<double>(n_interior + 1);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = node(i);
  return x;
}

// ---------------------------------------------------------------------------

SineTransform::SineTransform(std::size_t n) : n_(n), table_(n * n) {
  const double theta = std::numbers::pi / static_cast<double>(n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      // Reduce the argument so the table stays exactly symmetric.
      const std::size_t m = ((i + 1) * (k + 1)) % (2 * (n + 1));
      table_[i * n + k] = std::sin(theta * static_cast<double>(m));
    }
}

void SineTransform::to_nodal(std::span<const double> coeffs, std::span<double> values) const {
  require_same_size(coeffs.size(), n_, "modal_to_nodal");
  require_same_size(values.size(), n_, "modal_to_nodal");
  for (std::size_t i = 0; i < n_; ++i) {
    const double* row = &table_[i * n_];
    double s = 0.0;
    for (std::size_t k = 0; k < n_; ++k) s += row[k] * coeffs[k];
    values[i] = s;
  }
}

void SineTransform::to_modal(std::span<const double> values, std::span<double> coeffs) const {
  require_same_size(values.size(), n_, "nodal_to_modal");
  require_same_size(coeffs.size(), n_, "nodal_to_modal");
  const double scale = 2.0 / static_cast<double>(n_ + 1);
  for (std::size_t k = 0; k < n_; ++k) {
    const double* row = &table_[k * n_];
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += row[i] * values[i];
    coeffs[k] = scale * s;
  }
}

// ---------------------------------------------------------------------------

QuadratureRule trapezoid_rule(const Grid& grid) {
  QuadratureRule q;
  q.weights.assign(grid.size(), grid.spacing());
  q.endpoint_weight = grid.spacing();
  return q;
}

// ---------------------------------------------------------------------------

Operator4::Operator4(const Grid& grid, Scheme scheme)
    : scheme_(scheme),
      n_(grid.size()),
      h_(grid.spacing()),
      length_(grid.length()),
      inv_h4_(1.0 / (h_ * h_ * h_ * h_)),
      eigenvalues_(n_),
      transform_(scheme == Scheme::SpectralSine ? n_ : 0) {
  for (std::size_t k = 1; k <= n_; ++k) {
    double lam = 0.0;
    if (scheme == Scheme::SpectralSine) {
      const double w = static_cast<double>(k) * std::numbers::pi / length_;
      lam = w * w * w * w;
    } else {
      const double s = std::sin(static_cast<double>(k) * std::numbers::pi / (2.0 * static_cast<double>(n_ + 1)));
      const double mu = 4.0 * s * s / (h_ * h_);
      lam = mu * mu;
    }
    eigenvalues_[k - 1] = lam;
  }
}

double Operator4::fd_diag(std::size_t i) const {
  return (i == 0 || i + 1 == n_) ? 5.0 * inv_h4_ : 6.0 * inv_h4_;
}

void Operator4::second_difference(std::span<const double> u, std::span<double> out) const {
  const double inv_h2 = 1.0 / (h_ * h_);
  for (std::size_t i = 0; i < n_; ++i) {
    const double left = i > 0 ? u[i - 1] : 0.0;
    const double right = i + 1 < n_ ? u[i + 1] : 0.0;
    out[i] = (left - 2.0 * u[i] + right) * inv_h2;
  }
}

void Operator4::apply(std::span<const double> u, std::span<double> out) const {
  require_same_size(u.size(), n_, "Operator4::apply");
  require_same_size(out.size(), n_, "Operator4::apply");
  if (scheme_ == Scheme::FiniteDifference) {
    std::vector<double> d2(n_);
    second_difference(u, d2);
    second_difference(d2, out);
    return;
  }
  std::vector<double> c(n_);
  transform_.to_modal(u, c);
  for (std::size_t k = 0; k < n_; ++k) c[k] *= eigenvalues_[k];
  transform_.to_nodal(c, out);
}

void Operator4::apply_extended(std::span<const double> u, std::span<double> out) const {
  require_same_size(u.size(), n_, "Operator4::apply");
  require_same_size(out.size(), n_, "Operator4::apply");
  using ext = long double;
  if (scheme_ == Scheme::FiniteDifference) {
    const auto at = [&](std::ptrdiff_t i) -> ext {
      return (i < 0 || i >= static_cast<std::ptrdiff_t>(n_)) ? ext{0} : static_cast<ext>(u[i]);
    };
    for (std::size_t k = 0; k < n_; ++k) {
      const auto i = static_cast<std::ptrdiff_t>(k);
      // Ghost u_{-1} = -u_1 folds the 6 on the boundary rows into a 5.
      const ext centre = (k == 0 || k + 1 == n_) ? ext{5} : ext{6};
      const ext s = at(i - 2) - 4 * at(i - 1) + centre * at(i) - 4 * at(i + 1) + at(i + 2);
      out[k] = static_cast<double>(s * static_cast<ext>(inv_h4_));
    }
    return;
  }
  const auto& table = transform_.table();
  std::vector<ext> c(n_);
  const ext scale = ext{2} / static_cast<ext>(n_ + 1);
  for (std::size_t k = 0; k < n_; ++k) {
    ext s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += static_cast<ext>(table[k * n_ + i]) * u[i];
    c[k] = scale * s * static_cast<ext>(eigenvalues_[k]);
  }
  for (std::size_t i = 0; i < n_; ++i) {
    ext s = 0;
    for (std::size_t k = 0; k < n_; ++k) s += static_cast<ext>(table[i * n_ + k]) * c[k];
    out[i] = static_cast<double>(s);
  }
}

double Operator4::bilinear(std::span<const double> u, std::span<const double> w) const {
  require_same_size(u.size(), n_, "h2star_inner");
  require_same_size(w.size(), n_, "h2star_inner");
  if (scheme_ == Scheme::FiniteDifference) {
    std::vector<double> du(n_), dw(n_);
    second_difference(u, du);
    second_difference(w, dw);
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += du[i] * dw[i];
    return h_ * s;
  }
  std::vector<double> cu(n_), cw(n_);
  transform_.to_modal(u, cu);
  transform_.to_modal(w, cw);
  double s = 0.0;
  for (std::size_t k = 0; k < n_; ++k) s += eigenvalues_[k] * cu[k] * cw[k];
  return 0.5 * length_ * s;
}

Operator4 build_operator(const Grid& grid, Scheme scheme) { return Operator4(grid, scheme); }

// ---------------------------------------------------------------------------

Discretization::Discretization(const Grid& grid, Scheme scheme)
    : grid_(grid), op_(grid, scheme), quad_(trapezoid_rule(grid)) {}

Discretization::Discretization(double a, double b, std::size_t n_interior, Scheme scheme)
    : Discretization(Grid(a, b, n_interior), scheme) {}

std::vector<double> Discretization::sample(const SpatialField& field) const {
  const std::size_t n = grid_.size();
  std::vector<double> out(n, 0.0);
  if (const auto* m = std::get_if<SineMode>(&field)) {
    const double k = static_cast<double>(m->mode) * std::numbers::pi / grid_.length();
    for (std::size_t i = 0; i < n; ++i) out[i] = m->amplitude * std::sin(k * (grid_.node(i) - grid_.a()));
  } else if (const auto* s = std::get_if<NodalSamples>(&field)) {
    if (s->values.size() != n + 2)
      throw std::invalid_argument("nodal samples: expected " + std::to_string(n + 2) + " values, got " +
                                  std::to_string(s->values.size()));
    for (std::size_t i = 0; i < n; ++i) out[i] = s->values[i + 1];
  }
  return out;
}

// ---------------------------------------------------------------------------

double h2star_inner(std::span<const double> u, std::span<const double> w, const Discretization& disc) {
  return disc.op().bilinear(u, w);
}

double h2star_norm_sq(std::span<const double> u, const Discretization& disc) {
  return disc.op().bilinear(u, u);
}

double l2_inner(std::span<const double> u, std::span<const double> v, const QuadratureRule& quad) {
  require_same_size(u.size(), quad.weights.size(), "l2_inner");
  require_same_size(v.size(), quad.weights.size(), "l2_inner");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += quad.weights[i] * u[i] * v[i];
  return s;
}

double lp_norm_pow(std::span<const double> u, double p, const QuadratureRule& quad) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("lp_norm: p must lie in [1, inf)");
  require_same_size(u.size(), quad.weights.size(), "lp_norm");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += quad.weights[i] * std::pow(std::abs(u[i]), p);
  return s;
}

double lp_norm(std::span<const double> u, double p, const QuadratureRule& quad) {
  return std::pow(lp_norm_pow(u, p, quad), 1.0 / p);
}

std::vector<double> modal_to_nodal(std::span<const double> coeffs, const Grid& grid) {
  require_same_size(coeffs.size(), grid.size(), "modal_to_nodal");
  std::vector<double> out(grid.size());
  SineTransform(grid.size()).to_nodal(coeffs, out);
  return out;
}

std::vector<double> nodal_to_modal(std::span<const double> values, const Grid& grid) {
  require_same_size(values.size(), grid.size(), "nodal_to_modal");
  std::vector<double> out(grid.size());
  SineTransform(grid.size()).to_modal(values, out);
  return out;
}

double potential_V(std::span<const double> u, const RestoringLaw& restoring, const QuadratureRule& quad) {
  require_same_size(u.size(), quad.weights.size(), "potential_V");
  double s = quad.endpoint_weight * restoring_potential(restoring, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) s += quad.weights[i] * restoring_potential(restoring, u[i]);
  return s;
}

}  // namespace beam
