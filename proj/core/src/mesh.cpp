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

#include "modelforge/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_set>
#include <utility>

namespace modelforge {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::optional<double> parse_number(std::string_view token) {
  double value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

// Second moments of a tetrahedron (0, p, q, r):
//   integral of x_a*x_b dV = det/120 * (s_a*s_b + p_a*p_b + q_a*q_b + r_a*r_b)
// with s = p + q + r and det = p . (q x r).
void accumulate_tet(const Vec3& p, const Vec3& q, const Vec3& r, double& volume, Vec3& first,
                    Mat3& second) {
  double det = p.dot(q.cross(r));
  volume += det / 6.0;
  first += (det / 24.0) * (p + q + r);
  Vec3 s = p + q + r;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      second(a, b) += det / 120.0 * (s[a] * s[b] + p[a] * p[b] + q[a] * q[b] + r[a] * r[b]);
    }
  }
}

}  // namespace

std::optional<TriMesh> load_mesh(std::string_view text, Diagnostics& diags,
                                 const std::string& file) {
  TriMesh mesh;
  std::vector<std::array<int, 3>>& tris = mesh.triangles;

  int line_no = 0;
  std::size_t pos = 0;
  bool failed = false;
  while (pos <= text.size() && !failed) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::istringstream stream{std::string(line)};
    std::string record;
    stream >> record;
    if (record == "v") {
      std::string sx, sy, sz;
      stream >> sx >> sy >> sz;
      auto x = parse_number(sx), y = parse_number(sy), z = parse_number(sz);
      if (!x || !y || !z) {
        diags.error(DiagCode::kMalformedMesh, "non-numeric vertex coordinate", file, line_no);
        failed = true;
        break;
      }
      mesh.vertices.push_back({*x, *y, *z});
    } else if (record == "f") {
      std::vector<int> indices;
      std::string token;
      while (stream >> token) {
        // accept i, i/t, i//n, i/t/n; only the vertex index matters
        std::string_view head{token};
        if (auto slash = head.find('/'); slash != std::string_view::npos) {
          head = head.substr(0, slash);
        }
        int idx = 0;
        auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), idx);
        if (ec != std::errc{} || ptr != head.data() + head.size()) {
          diags.error(DiagCode::kMalformedMesh, "non-numeric face index '" + token + "'", file,
                      line_no);
          failed = true;
          break;
        }
        if (idx < 1 || idx > static_cast<int>(mesh.vertices.size())) {
          diags.error(DiagCode::kMalformedMesh,
                      "face index " + std::to_string(idx) + " out of range", file, line_no);
          failed = true;
          break;
        }
        indices.push_back(idx - 1);
      }
      if (failed) break;
      if (indices.size() < 3) {
        diags.error(DiagCode::kMalformedMesh, "face with fewer than 3 vertices", file, line_no);
        failed = true;
        break;
      }
      for (std::size_t i = 1; i + 1 < indices.size(); ++i) {
        tris.push_back({indices[0], indices[i], indices[i + 1]});
      }
    }
    // all other records (vn, vt, usemtl, comments, ...) are ignored
  }
  if (failed) return std::nullopt;
  return mesh;
}

std::optional<VolumeProperties> volume_properties(const TriMesh& mesh, Diagnostics& diags) {
  if (mesh.triangles.empty()) {
    diags.error(DiagCode::kOpenMesh, "mesh has no triangles");
    return std::nullopt;
  }

  // Closed and consistently oriented: every directed edge appears exactly
  // once and is matched by its reverse.
  auto edge_key = [](int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  };
  std::unordered_set<std::uint64_t> edges;
  edges.reserve(mesh.triangles.size() * 3);
  for (const auto& t : mesh.triangles) {
    for (int i = 0; i < 3; ++i) {
      if (!edges.insert(edge_key(t[i], t[(i + 1) % 3])).second) {
        diags.error(DiagCode::kOpenMesh, "inconsistent orientation: repeated directed edge");
        return std::nullopt;
      }
    }
  }
  for (std::uint64_t key : edges) {
    if (!edges.count((key >> 32) | (key << 32))) {
      diags.error(DiagCode::kOpenMesh, "mesh is not closed: unmatched edge");
      return std::nullopt;
    }
  }

  double volume = 0;
  Vec3 first;
  Mat3 second = Mat3::zero();
  for (const auto& t : mesh.triangles) {
    accumulate_tet(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]], volume, first,
                   second);
  }

  Vec3 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
          std::numeric_limits<double>::max()};
  Vec3 hi{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest(),
          std::numeric_limits<double>::lowest()};
  for (const Vec3& v : mesh.vertices) {
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  }
  double bbox_volume = (hi.x - lo.x) * (hi.y - lo.y) * (hi.z - lo.z);
  if (std::fabs(volume) < 1e-12 * bbox_volume || bbox_volume == 0) {
    diags.error(DiagCode::kOpenMesh, "signed volume is degenerate relative to the bounding box");
    return std::nullopt;
  }
  if (volume < 0) {
    diags.error(DiagCode::kOpenMesh, "mesh is oriented inward (negative signed volume)");
    return std::nullopt;
  }

  VolumeProperties props;
  props.volume = volume;
  props.centroid = first * (1.0 / volume);

  // inertia about the origin at unit density, then shifted to the centroid
  Mat3 origin_inertia = Mat3::zero();
  origin_inertia(0, 0) = second(1, 1) + second(2, 2);
  origin_inertia(1, 1) = second(0, 0) + second(2, 2);
  origin_inertia(2, 2) = second(0, 0) + second(1, 1);
  origin_inertia(0, 1) = origin_inertia(1, 0) = -second(0, 1);
  origin_inertia(0, 2) = origin_inertia(2, 0) = -second(0, 2);
  origin_inertia(1, 2) = origin_inertia(2, 1) = -second(1, 2);

  const Vec3& c = props.centroid;
  Mat3 shift = Mat3::zero();
  double c2 = c.dot(c);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      shift(a, b) = volume * ((a == b ? c2 : 0.0) - c[a] * c[b]);
    }
  }
  props.unit_density_inertia = origin_inertia - shift;
  return props;
}

std::optional<PrimitiveKind> primitive_from_string(std::string_view name) {
  if (name == "cuboid") return PrimitiveKind::kCuboid;
  if (name == "cylinder") return PrimitiveKind::kCylinder;
  if (name == "sphere") return PrimitiveKind::kSphere;
  return std::nullopt;
}

std::optional<TriMesh> make_primitive(PrimitiveKind kind, const std::vector<double>& dims,
                                      Diagnostics& diags, int slices, int subdivisions) {
  auto check_dims = [&](std::size_t expected, const char* what) {
    if (dims.size() != expected) {
      diags.error(DiagCode::kNonPositiveDimension,
                  std::string(what) + " expects " + std::to_string(expected) + " dimension(s)");
      return false;
    }
    for (double d : dims) {
      if (!(d > 0)) {
        diags.error(DiagCode::kNonPositiveDimension,
                    std::string(what) + " dimensions must be positive");
        return false;
      }
    }
    return true;
  };

  TriMesh mesh;
  switch (kind) {
    case PrimitiveKind::kCuboid: {
      if (!check_dims(3, "cuboid")) return std::nullopt;
      double x = dims[0] / 2, y = dims[1] / 2, z = dims[2] / 2;
      mesh.vertices = {{-x, -y, -z}, {x, -y, -z}, {x, y, -z}, {-x, y, -z},
                       {-x, -y, z},  {x, -y, z},  {x, y, z},  {-x, y, z}};
      mesh.triangles = {{0, 2, 1}, {0, 3, 2}, {4, 5, 6}, {4, 6, 7}, {0, 1, 5}, {0, 5, 4},
                        {2, 3, 7}, {2, 7, 6}, {0, 4, 7}, {0, 7, 3}, {1, 2, 6}, {1, 6, 5}};
      return mesh;
    }
    case PrimitiveKind::kCylinder: {
      if (!check_dims(2, "cylinder")) return std::nullopt;
      if (slices < 3) slices = 3;
      double r = dims[0], h = dims[1] / 2;
      int n = slices;
      for (int i = 0; i < n; ++i) {
        double a = 2 * kPi * i / n;
        mesh.vertices.push_back({r * std::cos(a), r * std::sin(a), -h});
      }
      for (int i = 0; i < n; ++i) {
        double a = 2 * kPi * i / n;
        mesh.vertices.push_back({r * std::cos(a), r * std::sin(a), h});
      }
      int bc = 2 * n, tc = 2 * n + 1;
      mesh.vertices.push_back({0, 0, -h});
      mesh.vertices.push_back({0, 0, h});
      for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        mesh.triangles.push_back({i, j, n + j});
        mesh.triangles.push_back({i, n + j, n + i});
        mesh.triangles.push_back({bc, j, i});
        mesh.triangles.push_back({tc, n + i, n + j});
      }
      return mesh;
    }
    case PrimitiveKind::kSphere: {
      if (!check_dims(1, "sphere")) return std::nullopt;
      double r = dims[0];
      double t = (1.0 + std::sqrt(5.0)) / 2.0;
      mesh.vertices = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
                       {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
      mesh.triangles = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
      for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
          auto key = std::minmax(a, b);
          auto it = midpoint.find(key);
          if (it != midpoint.end()) return it->second;
          Vec3 m = (mesh.vertices[a] + mesh.vertices[b]) * 0.5;
          mesh.vertices.push_back(m);
          int idx = static_cast<int>(mesh.vertices.size()) - 1;
          midpoint.emplace(key, idx);
          return idx;
        };
        std::vector<std::array<int, 3>> refined;
        refined.reserve(mesh.triangles.size() * 4);
        for (const auto& f : mesh.triangles) {
          int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
          refined.push_back({f[0], ab, ca});
          refined.push_back({f[1], bc, ab});
          refined.push_back({f[2], ca, bc});
          refined.push_back({ab, bc, ca});
        }
        mesh.triangles = std::move(refined);
      }
      for (Vec3& v : mesh.vertices) {
        double n = v.norm();
        v = v * (r / n);
      }
      return mesh;
    }
  }
  return std::nullopt;
}

std::optional<MassProperties> apply_mass_policy(const MassPolicy& policy, const TriMesh* mesh,
                                                const Vec3& scale, Diagnostics& diags) {
  if (policy.kind == MassPolicy::Kind::kUserValues) {
    const Mat3& inertia = policy.user.inertia;
    Mat3 skew = inertia - inertia.transpose();
    if (skew.max_abs() > 1e-9 * inertia.max_abs()) {
      diags.error(DiagCode::kAsymmetricUserInertia, "user inertia matrix is not symmetric");
      return std::nullopt;
    }
    return policy.user;
  }

  if (mesh == nullptr) {
    diags.error(DiagCode::kMissingMesh, "UseMeanDensity requires a segment mesh");
    return std::nullopt;
  }
  TriMesh scaled = scale_mesh(*mesh, scale);
  auto props = volume_properties(scaled, diags);
  if (!props) return std::nullopt;

  MassProperties out;
  out.mass = policy.density * props->volume;
  out.com = props->centroid;
  out.inertia = props->unit_density_inertia * policy.density;
  return out;
}

TriMesh scale_mesh(const TriMesh& mesh, const Vec3& scale) {
  TriMesh out = mesh;
  for (Vec3& v : out.vertices) v = v.cwise(scale);
  return out;
}

}  // namespace modelforge
