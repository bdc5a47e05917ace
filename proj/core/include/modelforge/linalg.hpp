// Copyright 2026 The ModelForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MODELFORGE_LINALG_HPP_
#define MODELFORGE_LINALG_HPP_

#include <array>
#include <cmath>

namespace modelforge {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 cwise(const Vec3& o) const { return {x * o.x, y * o.y, z * o.z}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Row-major 3x3 matrix.
struct Mat3 {
  std::array<double, 9> m{};

  static Mat3 identity() { return {{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }
  static Mat3 zero() { return {}; }
  static Mat3 diagonal(double a, double b, double c) {
    return {{a, 0, 0, 0, b, 0, 0, 0, c}};
  }

  double& operator()(int r, int c) { return m[3 * r + c]; }
  double operator()(int r, int c) const { return m[3 * r + c]; }
  bool operator==(const Mat3& o) const { return m == o.m; }

  Vec3 row(int r) const { return {m[3 * r], m[3 * r + 1], m[3 * r + 2]}; }

  Mat3 transpose() const {
    return {{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
  }

  Mat3 operator+(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
    return r;
  }
  Mat3 operator-(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
    return r;
  }
  Mat3 operator*(double s) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = m[i] * s;
    return r;
  }
  Vec3 operator*(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    return r;
  }

  double max_abs() const {
    double v = 0;
    for (double e : m) v = std::max(v, std::fabs(e));
    return v;
  }
};

inline Mat3 rot_x(double rad) {
  double c = std::cos(rad), s = std::sin(rad);
  return {{1, 0, 0, 0, c, -s, 0, s, c}};
}

inline Mat3 rot_y(double rad) {
  double c = std::cos(rad), s = std::sin(rad);
  return {{c, 0, s, 0, 1, 0, -s, 0, c}};
}

inline Mat3 rot_z(double rad) {
  double c = std::cos(rad), s = std::sin(rad);
  return {{c, -s, 0, s, c, 0, 0, 0, 1}};
}

// Intrinsic X-Y'-Z'' rotation from degrees.
inline Mat3 euler_xyz_deg(const Vec3& deg) {
  constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
  return rot_x(deg.x * kDegToRad) * rot_y(deg.y * kDegToRad) * rot_z(deg.z * kDegToRad);
}

using Vec6 = std::array<double, 6>;

}  // namespace modelforge

#endif  // MODELFORGE_LINALG_HPP_
