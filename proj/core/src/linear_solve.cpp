#include "linear_solve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <lapacke.h>

namespace beam::detail {

namespace {

constexpr int kBandwidth = 2;

SolveStatus solve_banded(const Operator4& op, std::span<const double> diagonal, double scale,
                         std::span<const double> rhs, std::span<double> x) {
  const std::size_t n = op.size();
  const std::size_t ldab = kBandwidth + 1;
  // Column-major upper band storage: ab[kd + i - j + j*ldab] = A(i, j), j-kd <= i <= j.
  std::vector<double> ab(ldab * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    ab[kBandwidth + j * ldab] = diagonal[j] + scale * op.fd_diag(j);
    if (j >= 1) ab[kBandwidth - 1 + j * ldab] = scale * op.fd_off1();
    if (j >= 2) ab[kBandwidth - 2 + j * ldab] = scale * op.fd_off2();
  }
  std::copy(rhs.begin(), rhs.end(), x.begin());
  const lapack_int info = LAPACKE_dpbsv(LAPACK_COL_MAJOR, 'U', static_cast<lapack_int>(n), kBandwidth, 1,
                                        ab.data(), static_cast<lapack_int>(ldab), x.data(),
                                        static_cast<lapack_int>(n));
  return info == 0 ? SolveStatus::Ok : SolveStatus::NotPositiveDefinite;
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

SolveStatus solve_spectral(const Operator4& op, std::span<const double> diagonal, double scale,
                           std::span<const double> rhs, std::span<double> x) {
  const std::size_t n = op.size();
  const SineTransform& sine = *op.transform();
  const double mean_diag = std::accumulate(diagonal.begin(), diagonal.end(), 0.0) / static_cast<double>(n);
  std::vector<double> precond(n);
  for (std::size_t k = 0; k < n; ++k) {
    precond[k] = mean_diag + scale * op.eigenvalues()[k];
    if (!(precond[k] > 0.0)) return SolveStatus::NotPositiveDefinite;
  }

  std::vector<double> tmp(n);
  const auto apply_matrix = [&](std::span<const double> in, std::span<double> out) {
    op.apply(in, out);
    for (std::size_t i = 0; i < n; ++i) out[i] = diagonal[i] * in[i] + scale * out[i];
  };
  const auto apply_precond = [&](std::span<const double> in, std::span<double> out) {
    sine.to_modal(in, tmp);
    for (std::size_t k = 0; k < n; ++k) tmp[k] /= precond[k];
    sine.to_nodal(tmp, out);
  };

  std::fill(x.begin(), x.end(), 0.0);
  std::vector<double> r(rhs.begin(), rhs.end()), z(n), p(n), q(n);
  const double rhs_norm = std::sqrt(dot(rhs, rhs));
  if (rhs_norm == 0.0) return SolveStatus::Ok;
  apply_precond(r, z);
  p = z;
  double rz = dot(r, z);
  constexpr int kMaxIter = 200;
  constexpr double kRelTol = 1e-14;
  for (int it = 0; it < kMaxIter; ++it) {
    apply_matrix(p, q);
    const double curvature = dot(p, q);
    if (!(curvature > 0.0)) return SolveStatus::NotPositiveDefinite;
    const double alpha = rz / curvature;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    if (std::sqrt(dot(r, r)) <= kRelTol * rhs_norm) break;
    apply_precond(r, z);
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  return SolveStatus::Ok;
}

}  // namespace

SolveStatus solve_shifted_operator(const Operator4& op, std::span<const double> diagonal, double scale,
                                   std::span<const double> rhs, std::span<double> x) {
  if (op.scheme() == Scheme::FiniteDifference) return solve_banded(op, diagonal, scale, rhs, x);
  return solve_spectral(op, diagonal, scale, rhs, x);
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace beam::detail
