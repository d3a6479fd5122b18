#pragma once

// Fixed-size dense linear algebra for the quaternion kinematics library.
//
// Everything here is at most 8x8 and lives on the stack. Matrices are stored
// row-major; indices are (row, col).

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>

#include "qkde/errors.hpp"

namespace qkde {

template <std::size_t N>
struct Vec {
  std::array<double, N> c{};

  static constexpr std::size_t size() { return N; }

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  friend constexpr bool operator==(const Vec&, const Vec&) = default;
};

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;
using Vec4 = Vec<4>;

template <std::size_t R, std::size_t C = R>
struct Mat {
  std::array<double, R * C> a{};

  static constexpr std::size_t rows() { return R; }
  static constexpr std::size_t cols() { return C; }

  constexpr double& operator()(std::size_t i, std::size_t j) { return a[i * C + j]; }
  constexpr double operator()(std::size_t i, std::size_t j) const { return a[i * C + j]; }

  static constexpr Mat zero() { return Mat{}; }

  static constexpr Mat identity() requires(R == C) {
    Mat m{};
    for (std::size_t i = 0; i < R; ++i) m(i, i) = 1.0;
    return m;
  }

  /// Build from nested row lists; missing entries stay zero.
  static constexpr Mat from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Mat m{};
    std::size_t i = 0;
    for (const auto& row : rows) {
      std::size_t j = 0;
      for (double v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  friend constexpr bool operator==(const Mat&, const Mat&) = default;
};

using Mat2 = Mat<2>;
using Mat3 = Mat<3>;
using Mat4 = Mat<4>;

// ---- vector arithmetic ----------------------------------------------------

template <std::size_t N>
constexpr Vec<N> operator+(const Vec<N>& x, const Vec<N>& y) {
  Vec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = x[i] + y[i];
  return r;
}

template <std::size_t N>
constexpr Vec<N> operator-(const Vec<N>& x, const Vec<N>& y) {
  Vec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = x[i] - y[i];
  return r;
}

template <std::size_t N>
constexpr Vec<N> operator*(double s, const Vec<N>& x) {
  Vec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = s * x[i];
  return r;
}

template <std::size_t N>
constexpr double dot(const Vec<N>& x, const Vec<N>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += x[i] * y[i];
  return s;
}

template <std::size_t N>
double norm(const Vec<N>& x) {
  return std::sqrt(dot(x, x));
}

template <std::size_t N>
bool all_finite(const Vec<N>& x) {
  for (double v : x.c)
    if (!std::isfinite(v)) return false;
  return true;
}

// ---- matrix arithmetic ----------------------------------------------------

template <std::size_t R, std::size_t C>
constexpr Mat<R, C> operator+(const Mat<R, C>& x, const Mat<R, C>& y) {
  Mat<R, C> r;
  for (std::size_t i = 0; i < R * C; ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

template <std::size_t R, std::size_t C>
constexpr Mat<R, C> operator-(const Mat<R, C>& x, const Mat<R, C>& y) {
  Mat<R, C> r;
  for (std::size_t i = 0; i < R * C; ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

template <std::size_t R, std::size_t C>
constexpr Mat<R, C> operator-(const Mat<R, C>& x) {
  Mat<R, C> r;
  for (std::size_t i = 0; i < R * C; ++i) r.a[i] = -x.a[i];
  return r;
}

template <std::size_t R, std::size_t C>
constexpr Mat<R, C> operator*(double s, const Mat<R, C>& x) {
  Mat<R, C> r;
  for (std::size_t i = 0; i < R * C; ++i) r.a[i] = s * x.a[i];
  return r;
}

template <std::size_t R, std::size_t K, std::size_t C>
constexpr Mat<R, C> operator*(const Mat<R, K>& x, const Mat<K, C>& y) {
  Mat<R, C> r;
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t k = 0; k < K; ++k) {
      const double xik = x(i, k);
      for (std::size_t j = 0; j < C; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

template <std::size_t R, std::size_t C>
constexpr Vec<R> operator*(const Mat<R, C>& m, const Vec<C>& v) {
  Vec<R> r;
  for (std::size_t i = 0; i < R; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < C; ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

template <std::size_t R, std::size_t C>
constexpr Mat<C, R> transpose(const Mat<R, C>& m) {
  Mat<C, R> t;
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) t(j, i) = m(i, j);
  return t;
}

template <std::size_t R, std::size_t C>
double frobenius_norm(const Mat<R, C>& m) {
  double s = 0.0;
  for (double v : m.a) s += v * v;
  return std::sqrt(s);
}

/// Largest absolute entry.
template <std::size_t R, std::size_t C>
double max_abs_entry(const Mat<R, C>& m) {
  double s = 0.0;
  for (double v : m.a) s = std::fmax(s, std::fabs(v));
  return s;
}

template <std::size_t R, std::size_t C>
bool all_finite(const Mat<R, C>& m) {
  for (double v : m.a)
    if (!std::isfinite(v)) return false;
  return true;
}

constexpr Mat4 mat_mul(const Mat4& x, const Mat4& y) { return x * y; }

// ---- solving --------------------------------------------------------------

/// Pivots smaller than this in magnitude are treated as singular.
inline constexpr double kSingularPivotFloor = 1e-14;

/// Gaussian elimination with partial pivoting. Throws SingularMatrixError when
/// the selected pivot magnitude falls below `pivot_floor`.
template <std::size_t N>
Vec<N> solve_linear(Mat<N> m, Vec<N> b, double pivot_floor = kSingularPivotFloor) {
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    double best = std::fabs(m(col, col));
    for (std::size_t r = col + 1; r < N; ++r) {
      const double v = std::fabs(m(r, col));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (!(best >= pivot_floor)) {
      throw SingularMatrixError("pivot magnitude below floor in column " + std::to_string(col));
    }
    if (piv != col) {
      for (std::size_t j = 0; j < N; ++j) std::swap(m(piv, j), m(col, j));
      std::swap(b[piv], b[col]);
    }
    const double inv = 1.0 / m(col, col);
    for (std::size_t r = col + 1; r < N; ++r) {
      const double f = m(r, col) * inv;
      if (f == 0.0) continue;
      m(r, col) = 0.0;
      for (std::size_t j = col + 1; j < N; ++j) m(r, j) -= f * m(col, j);
      b[r] -= f * b[col];
    }
  }
  Vec<N> x;
  for (std::size_t i = N; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < N; ++j) s -= m(i, j) * x[j];
    x[i] = s / m(i, i);
  }
  return x;
}

inline Vec4 solve_linear_4(const Mat4& m, const Vec4& b) { return solve_linear<4>(m, b); }

/// Solves m * X = rhs column by column.
template <std::size_t N>
Mat<N> solve_linear(const Mat<N>& m, const Mat<N>& rhs) {
  Mat<N> x;
  for (std::size_t j = 0; j < N; ++j) {
    Vec<N> col;
    for (std::size_t i = 0; i < N; ++i) col[i] = rhs(i, j);
    const Vec<N> sol = solve_linear<N>(m, col);
    for (std::size_t i = 0; i < N; ++i) x(i, j) = sol[i];
  }
  return x;
}

// ---- symplectic units -----------------------------------------------------

/// Standard symplectic matrix for N = 2: [[0, I2], [-I2, 0]].
constexpr Mat4 symplectic_j4() {
  return Mat4::from_rows({{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}});
}

/// 2x2 symplectic unit [[0, 1], [-1, 0]].
constexpr Mat2 symplectic_j2() { return Mat2::from_rows({{0, 1}, {-1, 0}}); }

}  // namespace qkde
