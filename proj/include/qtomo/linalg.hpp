// Copyright 2026 The qtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file    linalg.hpp
 * @brief   Fixed-size dense complex matrices (2x2 and 4x4) and the
 *          predicates used to validate quantum states and operators.
 *
 * Dimensions are template parameters, so a product or sum of mismatched
 * sizes does not compile. Values are immutable in practice: every
 * operation returns a fresh matrix.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace qtomo {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

/// Thrown for any input that violates an operation's precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

template <std::size_t N>
class Matrix {
  static_assert(N == 2 || N == 4, "only 2x2 and 4x4 matrices are supported");

 public:
  static constexpr std::size_t dim = N;

  /// Zero matrix.
  Matrix() { data_.fill(Complex{0.0, 0.0}); }

  /// Row-major construction; rejects wrong entry counts and non-finite values.
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    if (rows.size() != N) throw ValidationError("Matrix: wrong number of rows");
    std::size_t r = 0;
    for (const auto& row : rows) {
      if (row.size() != N) throw ValidationError("Matrix: wrong number of columns");
      std::size_t c = 0;
      for (const auto& z : row) {
        if (!is_finite(z)) throw ValidationError("Matrix: non-finite entry");
        data_[r * N + c] = z;
        ++c;
      }
      ++r;
    }
  }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m.data_[i * N + i] = 1.0;
    return m;
  }

  static Matrix diagonal(const std::array<Complex, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) {
      if (!is_finite(d[i])) throw ValidationError("Matrix: non-finite entry");
      m.data_[i * N + i] = d[i];
    }
    return m;
  }

  /// |i><i| in the computational basis.
  static Matrix projector(std::size_t i) {
    if (i >= N) throw ValidationError("Matrix: basis index out of range");
    Matrix m;
    m.data_[i * N + i] = 1.0;
    return m;
  }

  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * N + c]; }

  /// Returns a copy with one entry replaced.
  Matrix with(std::size_t r, std::size_t c, Complex z) const {
    if (r >= N || c >= N) throw ValidationError("Matrix: index out of range");
    if (!is_finite(z)) throw ValidationError("Matrix: non-finite entry");
    Matrix m = *this;
    m.data_[r * N + c] = z;
    return m;
  }

  bool operator==(const Matrix&) const = default;

 private:
  template <std::size_t M>
  friend class Matrix;
  template <std::size_t M>
  friend Matrix<M> operator*(const Matrix<M>&, const Matrix<M>&);
  template <std::size_t M>
  friend Matrix<M> operator+(const Matrix<M>&, const Matrix<M>&);
  template <std::size_t M>
  friend Matrix<M> operator-(const Matrix<M>&, const Matrix<M>&);
  template <std::size_t M>
  friend Matrix<M> scale(const Matrix<M>&, Complex);
  template <std::size_t M>
  friend Matrix<M> dagger(const Matrix<M>&);
  friend Matrix<4> kron(const Matrix<2>&, const Matrix<2>&);

  Complex& at(std::size_t r, std::size_t c) { return data_[r * N + c]; }

  std::array<Complex, N * N> data_;
};

using Matrix2 = Matrix<2>;
using Matrix4 = Matrix<4>;

template <std::size_t N>
Matrix<N> operator*(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < N; ++j) out.at(i, j) += aik * b(k, j);
    }
  return out;
}

template <std::size_t N>
Matrix<N> operator+(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N * N; ++i) out.data_[i] = a.data_[i] + b.data_[i];
  return out;
}

template <std::size_t N>
Matrix<N> operator-(const Matrix<N>& a, const Matrix<N>& b) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N * N; ++i) out.data_[i] = a.data_[i] - b.data_[i];
  return out;
}

template <std::size_t N>
Matrix<N> scale(const Matrix<N>& a, Complex c) {
  if (!is_finite(c)) throw ValidationError("scale: non-finite factor");
  Matrix<N> out;
  for (std::size_t i = 0; i < N * N; ++i) out.data_[i] = a.data_[i] * c;
  return out;
}

/// Conjugate transpose.
template <std::size_t N>
Matrix<N> dagger(const Matrix<N>& a) {
  Matrix<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out.at(i, j) = std::conj(a(j, i));
  return out;
}

template <std::size_t N>
Complex trace(const Matrix<N>& a) {
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < N; ++i) t += a(i, i);
  return t;
}

/// Tensor product a (x) b; basis order |00>, |01>, |10>, |11>.
inline Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (std::size_t ar = 0; ar < 2; ++ar)
    for (std::size_t ac = 0; ac < 2; ++ac)
      for (std::size_t br = 0; br < 2; ++br)
        for (std::size_t bc = 0; bc < 2; ++bc) out.at(2 * ar + br, 2 * ac + bc) = a(ar, ac) * b(br, bc);
  return out;
}

/// Max-entry norm of a - b.
template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline void require_positive_tol(double tol) {
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
}

template <std::size_t N>
bool is_unitary(const Matrix<N>& a, double tol = kDefaultTol) {
  require_positive_tol(tol);
  return max_abs_diff(a * dagger(a), Matrix<N>::identity()) <= tol;
}

template <std::size_t N>
bool is_hermitian(const Matrix<N>& a, double tol = kDefaultTol) {
  require_positive_tol(tol);
  return max_abs_diff(a, dagger(a)) <= tol;
}

template <std::size_t N>
struct EigenDecomposition {
  std::array<double, N> values;  // ascending
  Matrix<N> vectors;             // columns are eigenvectors
  int sweeps = 0;
};

/**
 * Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
 *
 * Each rotation acts in the (p, q) plane as J = [[c, s e], [-s conj(e), c]]
 * with e = a_pq / |a_pq|, which zeroes a_pq. Iteration stops once the
 * largest off-diagonal modulus falls below 1e-12 or after 100 sweeps.
 * Only the Hermitian part (a + a^dagger) / 2 is used.
 */
template <std::size_t N>
EigenDecomposition<N> hermitian_eigen(const Matrix<N>& input) {
  constexpr double kOffDiagTol = 1e-12;
  constexpr int kMaxSweeps = 100;

  std::array<std::array<Complex, N>, N> a{};
  std::array<std::array<Complex, N>, N> v{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      a[i][j] = 0.5 * (input(i, j) + std::conj(input(j, i)));
      v[i][j] = (i == j) ? 1.0 : 0.0;
    }

  auto off_diag = [&] {
    double m = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        if (i != j) m = std::max(m, std::abs(a[i][j]));
    return m;
  };

  int sweep = 0;
  for (; sweep < kMaxSweeps && off_diag() >= kOffDiagTol; ++sweep) {
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double r = std::abs(a[p][q]);
        if (r == 0.0) continue;
        const Complex e = a[p][q] / r;
        const double tau = (a[q][q].real() - a[p][p].real()) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex jpq = s * e;
        const Complex jqp = -s * std::conj(e);

        // a <- a J
        for (std::size_t k = 0; k < N; ++k) {
          const Complex akp = a[k][p];
          const Complex akq = a[k][q];
          a[k][p] = akp * c + akq * jqp;
          a[k][q] = akp * jpq + akq * c;
        }
        // a <- J^dagger a
        for (std::size_t k = 0; k < N; ++k) {
          const Complex apk = a[p][k];
          const Complex aqk = a[q][k];
          a[p][k] = c * apk + std::conj(jqp) * aqk;
          a[q][k] = std::conj(jpq) * apk + c * aqk;
        }
        a[p][q] = 0.0;
        a[q][p] = 0.0;
        a[p][p] = a[p][p].real();
        a[q][q] = a[q][q].real();
        // v <- v J
        for (std::size_t k = 0; k < N; ++k) {
          const Complex vkp = v[k][p];
          const Complex vkq = v[k][q];
          v[k][p] = vkp * c + vkq * jqp;
          v[k][q] = vkp * jpq + vkq * c;
        }
      }
    }
  }

  std::array<std::size_t, N> order{};
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a[x][x].real() < a[y][y].real(); });

  EigenDecomposition<N> out;
  out.sweeps = sweep;
  for (std::size_t col = 0; col < N; ++col) {
    out.values[col] = a[order[col]][order[col]].real();
    for (std::size_t row = 0; row < N; ++row) out.vectors = out.vectors.with(row, col, v[row][order[col]]);
  }
  return out;
}

/// Hermitian within tol, unit trace within tol, and no eigenvalue below -tol.
template <std::size_t N>
bool is_density(const Matrix<N>& a, double tol = kDefaultTol) {
  require_positive_tol(tol);
  if (!is_hermitian(a, tol)) return false;
  if (std::abs(trace(a) - Complex{1.0, 0.0}) > tol) return false;
  const auto eig = hermitian_eigen(a);
  return eig.values.front() >= -tol;
}

template <std::size_t N>
void require_density(const Matrix<N>& a, const char* what, double tol = kDefaultTol) {
  if (!is_density(a, tol)) throw ValidationError(std::string(what) + ": input is not a valid density matrix");
}

}  // namespace qtomo
