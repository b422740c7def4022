#pragma once

#include <cmath>
#include <limits>

// Per-point arithmetic of the FTLE core, templated on the scalar type so the
// exact same formula sequence can run on plain doubles and on the
// operation-counting scalar used by the FLOP audit.

namespace ftle {

inline double ft_sqrt(double x) { return std::sqrt(x); }
inline double ft_log(double x) { return std::log(x); }
inline double ft_acos(double x) { return std::acos(x); }
inline double ft_cos(double x) { return std::cos(x); }
inline double ft_abs(double x) { return std::fabs(x); }

// One-record-per-point input of the streaming core: for each axis, the
// axis coordinate of the two axis neighbors and their full flow-map vectors.
// Absent neighbors carry the point's own values (one-sided fallback).
template <class T>
struct BasicPointRecord {
  int dim = 2;
  T coord_minus[3] = {};
  T coord_plus[3] = {};
  T fm_minus[3][3] = {};  // [axis][component]
  T fm_plus[3][3] = {};
};

// J[i][j] = d(phi_i)/d(x_j) by central/one-sided difference. A zero
// denominator makes column j the identity column e_j.
template <class T>
void gradient_columns(const BasicPointRecord<T>& rec, T jac[3][3]) {
  const int dim = rec.dim;
  for (int j = 0; j < dim; ++j) {
    T den = rec.coord_plus[j] - rec.coord_minus[j];
    if (den == T(0.0)) {
      for (int i = 0; i < dim; ++i) jac[i][j] = T(i == j ? 1.0 : 0.0);
      continue;
    }
    for (int i = 0; i < dim; ++i) {
      jac[i][j] = (rec.fm_plus[j][i] - rec.fm_minus[j][i]) / den;
    }
  }
}

// C = J^T J, upper triangle computed and mirrored.
template <class T>
void cauchy_green_from_jacobian(int dim, const T jac[3][3], T cg[3][3]) {
  for (int a = 0; a < dim; ++a) {
    for (int b = a; b < dim; ++b) {
      T sum = jac[0][a] * jac[0][b];
      for (int i = 1; i < dim; ++i) sum = sum + jac[i][a] * jac[i][b];
      cg[a][b] = sum;
      cg[b][a] = sum;
    }
  }
}

// lambda_max = m + sqrt(max(m^2 - det, 0)), m = trace/2. The clamp guards
// rounding for near-repeated eigenvalues.
template <class T>
T max_eigenvalue_sym2(const T cg[3][3]) {
  T m = (cg[0][0] + cg[1][1]) * T(0.5);
  T det = cg[0][0] * cg[1][1] - cg[0][1] * cg[0][1];
  T disc = m * m - det;
  if (disc < T(0.0)) disc = T(0.0);
  return m + ft_sqrt(disc);
}

// Largest eigenvalue of a symmetric 3x3 via the trigonometric closed form,
// acos argument clamped to [-1, 1].
template <class T>
T max_eigenvalue_sym3(const T cg[3][3]) {
  T p1 = cg[0][1] * cg[0][1] + cg[0][2] * cg[0][2] + cg[1][2] * cg[1][2];
  T q = (cg[0][0] + cg[1][1] + cg[2][2]) / T(3.0);
  T d0 = cg[0][0] - q;
  T d1 = cg[1][1] - q;
  T d2 = cg[2][2] - q;
  T p2 = d0 * d0 + d1 * d1 + d2 * d2 + T(2.0) * p1;
  if (p2 <= T(0.0)) return q;  // scalar multiple of the identity
  T p = ft_sqrt(p2 / T(6.0));
  T b00 = d0 / p;
  T b11 = d1 / p;
  T b22 = d2 / p;
  T b01 = cg[0][1] / p;
  T b02 = cg[0][2] / p;
  T b12 = cg[1][2] / p;
  T det_b = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) +
            b02 * (b01 * b12 - b11 * b02);
  T r = det_b * T(0.5);
  if (r < T(-1.0)) r = T(-1.0);
  if (r > T(1.0)) r = T(1.0);
  T phi = ft_acos(r) / T(3.0);
  return q + T(2.0) * p * ft_cos(phi);
}

// ln(lambda)/(2|T|) above the floor, NaN sentinel otherwise.
template <class T>
T ftle_value(T lambda_max, T t_horizon) {
  if (!(lambda_max > T(1e-300))) {
    return T(std::numeric_limits<double>::quiet_NaN());
  }
  return ft_log(lambda_max) / (T(2.0) * ft_abs(t_horizon));
}

// Full per-point path: gradient -> Cauchy-Green -> max eigenvalue -> FTLE.
template <class T>
T ftle_from_record(const BasicPointRecord<T>& rec, T t_horizon) {
  T jac[3][3];
  gradient_columns(rec, jac);
  T cg[3][3];
  cauchy_green_from_jacobian(rec.dim, jac, cg);
  T lambda = rec.dim == 2 ? max_eigenvalue_sym2(cg) : max_eigenvalue_sym3(cg);
  return ftle_value(lambda, t_horizon);
}

}  // namespace ftle
