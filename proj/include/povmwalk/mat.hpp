// Copyright 2026 The povmwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POVMWALK_MAT_HPP
#define POVMWALK_MAT_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace povmwalk {

using complexd = std::complex<double>;

/// Dense 2x2 complex matrix, row-major. Just enough linear algebra for the
/// measurement-operator identities; not a general matrix library.
struct Mat2 {
  std::array<complexd, 4> m{};

  complexd &operator()(size_t r, size_t c) { return m[2 * r + c]; }
  const complexd &operator()(size_t r, size_t c) const { return m[2 * r + c]; }

  static Mat2 identity() { return Mat2{{complexd{1}, {}, {}, complexd{1}}}; }
  static Mat2 diagonal(double d0, double d1) {
    return Mat2{{complexd{d0}, {}, {}, complexd{d1}}};
  }

  Mat2 adjoint() const {
    return Mat2{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
  }

  friend Mat2 operator*(const Mat2 &a, const Mat2 &b) {
    Mat2 r;
    for (size_t i = 0; i < 2; i++) {
      for (size_t j = 0; j < 2; j++) {
        r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
      }
    }
    return r;
  }
  friend Mat2 operator+(const Mat2 &a, const Mat2 &b) {
    Mat2 r;
    for (size_t i = 0; i < 4; i++) r.m[i] = a.m[i] + b.m[i];
    return r;
  }
  friend Mat2 operator-(const Mat2 &a, const Mat2 &b) {
    Mat2 r;
    for (size_t i = 0; i < 4; i++) r.m[i] = a.m[i] - b.m[i];
    return r;
  }
  friend Mat2 operator*(complexd s, const Mat2 &a) {
    Mat2 r;
    for (size_t i = 0; i < 4; i++) r.m[i] = s * a.m[i];
    return r;
  }

  std::array<complexd, 2> apply(const std::array<complexd, 2> &v) const {
    return {m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]};
  }

  /// Largest entrywise absolute deviation from `other`.
  double max_abs_diff(const Mat2 &other) const {
    double w = 0;
    for (size_t i = 0; i < 4; i++) w = std::max(w, std::abs(m[i] - other.m[i]));
    return w;
  }
};

/// Dense 4x4 complex matrix, row-major; used only for the dilation unitary.
struct Mat4 {
  std::array<complexd, 16> m{};

  complexd &operator()(size_t r, size_t c) { return m[4 * r + c]; }
  const complexd &operator()(size_t r, size_t c) const { return m[4 * r + c]; }

  static Mat4 identity() {
    Mat4 r;
    for (size_t i = 0; i < 4; i++) r(i, i) = 1;
    return r;
  }

  Mat4 adjoint() const {
    Mat4 r;
    for (size_t i = 0; i < 4; i++) {
      for (size_t j = 0; j < 4; j++) r(i, j) = std::conj((*this)(j, i));
    }
    return r;
  }

  friend Mat4 operator*(const Mat4 &a, const Mat4 &b) {
    Mat4 r;
    for (size_t i = 0; i < 4; i++) {
      for (size_t j = 0; j < 4; j++) {
        complexd acc{};
        for (size_t k = 0; k < 4; k++) acc += a(i, k) * b(k, j);
        r(i, j) = acc;
      }
    }
    return r;
  }

  std::array<complexd, 4> apply(const std::array<complexd, 4> &v) const {
    std::array<complexd, 4> r{};
    for (size_t i = 0; i < 4; i++) {
      for (size_t k = 0; k < 4; k++) r[i] += (*this)(i, k) * v[k];
    }
    return r;
  }

  double max_abs_diff(const Mat4 &other) const {
    double w = 0;
    for (size_t i = 0; i < 16; i++) w = std::max(w, std::abs(m[i] - other.m[i]));
    return w;
  }
};

}  // namespace povmwalk

#endif
