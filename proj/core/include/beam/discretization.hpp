#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "beam/model.hpp"

namespace beam {

enum class Scheme { FiniteDifference, SpectralSine };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);  // "fd" | "spectral"

/// Uniform grid on (a, b). Only the n interior nodes carry unknowns; the
/// endpoint values are identically zero.
class Grid {
 public:
  Grid(double a, double b, std::size_t n_interior);

  double a() const { return a_; }
  double b() const { return b_; }
  double length() const { return b_ - a_; }
  std::size_t size() const { return n_; }
  double spacing() const { return h_; }
  /// Interior node i (0-based), x = a + (i + 1)·h.
  double node(std::size_t i) const { return a_ + static_cast<double>(i + 1) * h_; }
  std::vector<double> nodes() const;

 private:
  double a_;
  double b_;
  std::size_t n_;
  double h_;
};

/// Dense DST-I pair between sine coefficients c_k (k = 1..n) and interior
/// nodal values: u_i = Σ_k c_k sin(kπ(x_i − a)/L).
class SineTransform {
 public:
  explicit SineTransform(std::size_t n);

  std::size_t size() const { return n_; }
  void to_nodal(std::span<const double> coeffs, std::span<double> values) const;
  void to_modal(std::span<const double> values, std::span<double> coeffs) const;
  const std::vector<double>& table() const { return table_; }

 private:
  std::size_t n_;
  std::vector<double> table_;  // row-major sin(kπ i/(n+1)), symmetric
};

/// Trapezoid weights on the zero-extended function: h at every interior node.
/// The endpoints carry weight h/2 each and value 0.
struct QuadratureRule {
  std::vector<double> weights;
  double endpoint_weight{0.0};  // total weight of the two endpoint nodes
};

QuadratureRule trapezoid_rule(const Grid& grid);

/// Semi-discrete ∂⁴ₓ under u = u_xx = 0 at both ends.
///
/// FiniteDifference: A = D² with D = tridiag(1, −2, 1)/h² (Dirichlet), i.e.
/// interior rows (1, −4, 6, −4, 1)/h⁴ and first/last row (5, −4, 1)/h⁴ from
/// the antisymmetric ghost u_{−1} = −u_1. SpectralSine: A = S Λ S⁻¹ with
/// λ_k = (kπ/L)⁴ acting on nodal values through the sine transform.
class Operator4 {
 public:
  Operator4(const Grid& grid, Scheme scheme);

  Scheme scheme() const { return scheme_; }
  std::size_t size() const { return n_; }

  /// out = A u
  void apply(std::span<const double> u, std::span<double> out) const;
  /// out = A u with long double accumulation; used where A u enters a
  /// residual that is driven to roundoff level.
  void apply_extended(std::span<const double> u, std::span<double> out) const;
  /// (A u, w)_h computed from the symmetric bilinear form, i.e. ∫ u_xx w_xx.
  double bilinear(std::span<const double> u, std::span<const double> w) const;

  /// Spectral eigenvalues (kπ/L)⁴, k = 1..n. For FD, the exact eigenvalues of
  /// the discrete operator, (4/h² sin²(kπh/2L))².
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }

  /// FD band coefficients (diagonal, first and second off-diagonals); the
  /// first and last diagonal entries are 5/h⁴, the rest 6/h⁴.
  double fd_diag(std::size_t i) const;
  double fd_off1() const { return -4.0 * inv_h4_; }
  double fd_off2() const { return inv_h4_; }

  const SineTransform* transform() const { return transform_.size() ? &transform_ : nullptr; }

 private:
  void second_difference(std::span<const double> u, std::span<double> out) const;

  Scheme scheme_;
  std::size_t n_;
  double h_;
  double length_;
  double inv_h4_;
  std::vector<double> eigenvalues_;
  SineTransform transform_;
};

Operator4 build_operator(const Grid& grid, Scheme scheme);

/// Grid + operator + quadrature, shared by every consumer of a run.
class Discretization {
 public:
  Discretization(const Grid& grid, Scheme scheme);
  Discretization(double a, double b, std::size_t n_interior, Scheme scheme);

  const Grid& grid() const { return grid_; }
  const Operator4& op() const { return op_; }
  const QuadratureRule& quadrature() const { return quad_; }
  Scheme scheme() const { return op_.scheme(); }
  std::size_t size() const { return grid_.size(); }

  /// Interior nodal samples of a spatial field.
  std::vector<double> sample(const SpatialField& field) const;

 private:
  Grid grid_;
  Operator4 op_;
  QuadratureRule quad_;
};

double h2star_inner(std::span<const double> u, std::span<const double> w, const Discretization& disc);
double h2star_norm_sq(std::span<const double> u, const Discretization& disc);
double l2_inner(std::span<const double> u, std::span<const double> v, const QuadratureRule& quad);
/// (∫|u|^p)^(1/p)
double lp_norm(std::span<const double> u, double p, const QuadratureRule& quad);
/// ∫|u|^p, e.g. ‖u'‖³_{L³} for p = 3
double lp_norm_pow(std::span<const double> u, double p, const QuadratureRule& quad);

std::vector<double> modal_to_nodal(std::span<const double> coeffs, const Grid& grid);
std::vector<double> nodal_to_modal(std::span<const double> values, const Grid& grid);

/// ∫ f2(u) dx by the trapezoid rule; endpoints contribute f2(0)·h.
double potential_V(std::span<const double> u, const RestoringLaw& restoring, const QuadratureRule& quad);

}  // namespace beam
