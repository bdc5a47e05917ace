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

#include "modelforge/exporter.hpp"

#include <set>
#include <utility>

#include <json.hpp>

#include "modelforge/numbers.hpp"

namespace modelforge {
namespace {

using ordered_json = nlohmann::ordered_json;

// Flattened, collision-free view shared by the single and combined writers.
struct ExportFrame {
  std::string name;
  std::string parent;
  const ModelSegment* segment = nullptr;
};

struct ExportPoint {
  std::string name;
  std::string body;
  Vec3 position;
};

struct ExportContactRow {
  std::string body;
  std::string point;
  Vec3 normal;
};

struct ExportModel {
  Vec3 gravity;
  std::vector<ExportFrame> frames;
  std::vector<ExportPoint> points;
  // (set key, contact rows) in first-appearance order; loop sets follow
  std::vector<std::pair<std::string, std::vector<ExportContactRow>>> contact_sets;
  std::vector<LoopConstraintSet> loop_sets;
  std::vector<std::pair<std::string, std::string>> provenance;
};

std::vector<ExportContactRow>& contact_set(ExportModel& out, const std::string& key) {
  for (auto& [name, rows] : out.contact_sets) {
    if (name == key) return rows;
  }
  out.contact_sets.emplace_back(key, std::vector<ExportContactRow>{});
  return out.contact_sets.back().second;
}

void append_model(ExportModel& out, const KinematicModel& model, const std::string& prefix,
                  Diagnostics& diags) {
  std::set<std::string> used;
  for (const auto& f : out.frames) used.insert(f.name);

  std::map<std::string, std::string> rename;
  for (const auto& s : model.segments) {
    std::string name = s.name;
    if (used.count(name)) {
      name = prefix + s.name;
      diags.warning(DiagCode::kNameCollision,
                    "frame '" + s.name + "' renamed to '" + name + "' in the combined model");
    }
    used.insert(name);
    rename[s.name] = name;
  }

  std::set<std::string> point_names;
  for (const auto& p : out.points) point_names.insert(p.name);

  for (const auto& s : model.segments) {
    ExportFrame frame;
    frame.name = rename[s.name];
    frame.parent = s.parent_id == 0 ? std::string(kRootName) : rename[s.parent_name];
    frame.segment = &s;
    out.frames.push_back(std::move(frame));

    for (const auto& p : s.points) {
      std::string point_name = p.name;
      if (point_names.count(point_name)) {
        point_name = prefix + p.name;
        diags.warning(DiagCode::kNameCollision,
                      "point '" + p.name + "' renamed to '" + point_name +
                          "' in the combined model");
      }
      point_names.insert(point_name);
      out.points.push_back({point_name, rename[s.name], p.position});
    }
  }

  // contact rows grouped by subset name, in segment then row order
  for (const auto& s : model.segments) {
    for (const auto& c : s.constraints) {
      // point names inside one model are unique per segment; the renamed
      // top-level point keeps the same per-body name, so the row keeps it
      contact_set(out, c.subset_name).push_back({rename[s.name], c.point_name, c.normal});
    }
  }

  for (const auto& loop : model.loop_constraints) {
    LoopConstraintSet remapped = loop;
    for (auto& row : remapped.rows) {
      if (auto it = rename.find(row.predecessor_body); it != rename.end()) {
        row.predecessor_body = it->second;
      }
      if (auto it = rename.find(row.successor_body); it != rename.end()) {
        row.successor_body = it->second;
      }
    }
    out.loop_sets.push_back(std::move(remapped));
  }

  for (const auto& [label, digest] : model.provenance) {
    bool seen = false;
    for (const auto& [l, d] : out.provenance) seen = seen || (l == label && d == digest);
    if (!seen) out.provenance.emplace_back(label, digest);
  }
}

// ---------------------------------------------------------------------------
// Lua writer

void lua_vec3(std::string& out, const Vec3& v) {
  out += "{ " + format_double(v.x) + ", " + format_double(v.y) + ", " + format_double(v.z) + " }";
}

void lua_mat3(std::string& out, const Mat3& m, const std::string& indent) {
  out += "{\n";
  for (int r = 0; r < 3; ++r) {
    out += indent + "  { " + format_double(m(r, 0)) + ", " + format_double(m(r, 1)) + ", " +
           format_double(m(r, 2)) + " },\n";
  }
  out += indent + "}";
}

void lua_vec6(std::string& out, const Vec6& v) {
  out += "{ ";
  for (int i = 0; i < 6; ++i) {
    out += format_double(v[i]);
    out += i + 1 < 6 ? ", " : " ";
  }
  out += "}";
}

std::string lua_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_lua(const ExportModel& model) {
  std::string out;
  out += "-- modelforge model file\n";
  for (const auto& [label, digest] : model.provenance) {
    out += "-- input " + label + " " + digest + "\n";
  }
  out += "return {\n";
  out += "  gravity = ";
  lua_vec3(out, model.gravity);
  out += ",\n";

  out += "  frames = {\n";
  for (const auto& frame : model.frames) {
    const ModelSegment& s = *frame.segment;
    out += "    {\n";
    out += "      name = " + lua_quote(frame.name) + ",\n";
    out += "      parent = " + lua_quote(frame.parent) + ",\n";
    out += "      joint = {";
    if (s.joint.rows.empty()) {
      out += "},\n";
    } else {
      out += "\n";
      for (const auto& row : s.joint.rows) {
        out += "        ";
        lua_vec6(out, row);
        out += ",\n";
      }
      out += "      },\n";
    }
    if (!s.joint.custom_payload.empty()) {
      out += "      joint_payload = " + lua_quote(s.joint.custom_payload) + ",\n";
    }
    out += "      joint_frame = {\n";
    out += "        r = ";
    lua_vec3(out, s.joint_r);
    out += ",\n";
    out += "        E = ";
    lua_mat3(out, s.joint_E, "        ");
    out += ",\n";
    out += "      },\n";
    out += "      body = {\n";
    out += "        mass = " + format_double(s.mass) + ",\n";
    out += "        com = ";
    lua_vec3(out, s.com);
    out += ",\n";
    out += "        inertia = ";
    lua_mat3(out, s.inertia, "        ");
    out += ",\n";
    out += "      },\n";
    if (!s.markers.empty()) {
      out += "      markers = {\n";
      for (const auto& m : s.markers) {
        out += "        [" + lua_quote(m.name) + "] = ";
        lua_vec3(out, m.position);
        out += ",\n";
      }
      out += "      },\n";
    }
    if (!s.mesh.empty()) {
      out += "      visuals = {\n";
      out += "        {\n";
      out += "          src = " + lua_quote(s.mesh.source) + ",\n";
      out += "          dimensions = ";
      lua_vec3(out, s.mesh.dimensions);
      out += ",\n";
      out += "          mesh_center = ";
      lua_vec3(out, s.mesh.center);
      out += ",\n";
      out += "        },\n";
      out += "      },\n";
    }
    out += "    },\n";
  }
  out += "  },\n";

  if (!model.points.empty()) {
    out += "  points = {\n";
    for (const auto& p : model.points) {
      out += "    { name = " + lua_quote(p.name) + ", body = " + lua_quote(p.body) + ", point = ";
      lua_vec3(out, p.position);
      out += " },\n";
    }
    out += "  },\n";
  }

  if (!model.contact_sets.empty() || !model.loop_sets.empty()) {
    out += "  constraint_sets = {\n";
    for (const auto& [name, rows] : model.contact_sets) {
      out += "    [" + lua_quote(name) + "] = {\n";
      for (const auto& row : rows) {
        out += "      { constraint_type = \"contact\", body = " + lua_quote(row.body) +
               ", point = " + lua_quote(row.point) + ", normal = ";
        lua_vec3(out, row.normal);
        out += " },\n";
      }
      out += "    },\n";
    }
    for (const auto& loop : model.loop_sets) {
      out += "    [" + lua_quote(loop.name) + "] = {\n";
      for (const auto& row : loop.rows) {
        out += "      { constraint_type = \"loop\", predecessor_body = " +
               lua_quote(row.predecessor_body) +
               ", predecessor_point = " + lua_quote(row.predecessor_point) +
               ", successor_body = " + lua_quote(row.successor_body) +
               ", successor_point = " + lua_quote(row.successor_point) + ", axis = ";
        lua_vec6(out, row.axis);
        out += " },\n";
      }
      out += "    },\n";
    }
    out += "  },\n";
  }

  out += "}\n";
  return out;
}

// ---------------------------------------------------------------------------
// JSON mirror

ordered_json json_vec3(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

ordered_json json_mat3(const Mat3& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < 3; ++r) {
    rows.push_back(ordered_json::array({m(r, 0), m(r, 1), m(r, 2)}));
  }
  return rows;
}

ordered_json render_json(const ExportModel& model) {
  ordered_json root;
  root["gravity"] = json_vec3(model.gravity);

  ordered_json frames = ordered_json::array();
  for (const auto& frame : model.frames) {
    const ModelSegment& s = *frame.segment;
    ordered_json f;
    f["name"] = frame.name;
    f["parent"] = frame.parent;
    ordered_json joint = ordered_json::array();
    for (const auto& row : s.joint.rows) {
      ordered_json r = ordered_json::array();
      for (double v : row) r.push_back(v);
      joint.push_back(std::move(r));
    }
    f["joint"] = std::move(joint);
    if (!s.joint.custom_payload.empty()) f["joint_payload"] = s.joint.custom_payload;
    f["joint_frame"] = {{"r", json_vec3(s.joint_r)}, {"E", json_mat3(s.joint_E)}};
    f["body"] = {{"mass", s.mass}, {"com", json_vec3(s.com)}, {"inertia", json_mat3(s.inertia)}};
    if (!s.markers.empty()) {
      ordered_json markers;
      for (const auto& m : s.markers) markers[m.name] = json_vec3(m.position);
      f["markers"] = std::move(markers);
    }
    if (!s.mesh.empty()) {
      ordered_json visual;
      visual["src"] = s.mesh.source;
      visual["dimensions"] = json_vec3(s.mesh.dimensions);
      visual["mesh_center"] = json_vec3(s.mesh.center);
      f["visuals"] = ordered_json::array({std::move(visual)});
    }
    frames.push_back(std::move(f));
  }
  root["frames"] = std::move(frames);

  ordered_json points = ordered_json::array();
  for (const auto& p : model.points) {
    points.push_back(
        {{"name", p.name}, {"body", p.body}, {"point", json_vec3(p.position)}});
  }
  root["points"] = std::move(points);

  ordered_json sets;
  for (const auto& [name, rows] : model.contact_sets) {
    ordered_json set_rows = ordered_json::array();
    for (const auto& row : rows) {
      set_rows.push_back({{"constraint_type", "contact"},
                          {"body", row.body},
                          {"point", row.point},
                          {"normal", json_vec3(row.normal)}});
    }
    sets[name] = std::move(set_rows);
  }
  for (const auto& loop : model.loop_sets) {
    ordered_json set_rows = ordered_json::array();
    for (const auto& row : loop.rows) {
      ordered_json axis = ordered_json::array();
      for (double v : row.axis) axis.push_back(v);
      set_rows.push_back({{"constraint_type", "loop"},
                          {"predecessor_body", row.predecessor_body},
                          {"predecessor_point", row.predecessor_point},
                          {"successor_body", row.successor_body},
                          {"successor_point", row.successor_point},
                          {"axis", std::move(axis)}});
    }
    sets[loop.name] = std::move(set_rows);
  }
  root["constraint_sets"] = std::move(sets);

  ordered_json provenance;
  for (const auto& [label, digest] : model.provenance) provenance[label] = digest;
  root["provenance"] = std::move(provenance);
  return root;
}

bool check_valid(const KinematicModel& model, Diagnostics& diags) {
  Diagnostics report = validate_model(model);
  if (report.has_errors()) {
    diags.append(report);
    diags.error(DiagCode::kValidationFailed,
                "model '" + model.name + "' failed validation; nothing exported");
    return false;
  }
  return true;
}

}  // namespace

std::string write_lua_model(const KinematicModel& model, Diagnostics& diags) {
  if (!check_valid(model, diags)) return {};
  ExportModel out;
  out.gravity = model.gravity;
  append_model(out, model, "", diags);
  return render_lua(out);
}

std::string write_combined(const KinematicModel* human,
                           const std::vector<const KinematicModel*>& objects,
                           const std::vector<LoopConstraintSet>& extra_loops, Diagnostics& diags) {
  ExportModel out;
  bool first = true;
  if (human != nullptr) {
    if (!check_valid(*human, diags)) return {};
    out.gravity = human->gravity;
    first = false;
    append_model(out, *human, "", diags);
  }
  for (std::size_t k = 0; k < objects.size(); ++k) {
    const KinematicModel& object = *objects[k];
    if (!check_valid(object, diags)) return {};
    if (first) {
      out.gravity = object.gravity;
      first = false;
    }
    append_model(out, object, "Object" + std::to_string(k + 1) + "_", diags);
  }

  for (const auto& loop : extra_loops) {
    bool resolved = true;
    for (const auto& row : loop.rows) {
      bool pred = false, succ = false;
      for (const auto& f : out.frames) {
        pred = pred || f.name == row.predecessor_body;
        succ = succ || f.name == row.successor_body;
      }
      resolved = resolved && pred && succ;
    }
    if (!resolved) {
      diags.error(DiagCode::kUnknownSegment,
                  "loop constraint set '" + loop.name +
                      "' references bodies missing from the combined model");
      return {};
    }
    out.loop_sets.push_back(loop);
  }
  return render_lua(out);
}

std::string write_json_model(const KinematicModel& model, Diagnostics& diags) {
  if (!check_valid(model, diags)) return {};
  ExportModel out;
  out.gravity = model.gravity;
  append_model(out, model, "", diags);
  return render_json(out).dump(2) + "\n";
}

std::string write_preview_scene(const KinematicModel& model, Diagnostics& diags) {
  if (!check_valid(model, diags)) return {};
  auto poses = reference_pose_frames(model);

  std::string out = "# modelforge preview scene\n";
  std::string geometry;
  int vertex_base = 0;

  for (const auto& s : model.segments) {
    const WorldPose& pose = poses.at(s.name);
    for (const auto& p : s.points) {
      Vec3 world = pose.rotation * p.position + pose.translation;
      out += "# point " + s.name + " " + p.name + " " + format_double(world.x) + " " +
             format_double(world.y) + " " + format_double(world.z) + "\n";
    }
    for (const auto& m : s.markers) {
      Vec3 world = pose.rotation * m.position + pose.translation;
      out += "# marker " + s.name + " " + m.name + " " + format_double(world.x) + " " +
             format_double(world.y) + " " + format_double(world.z) + "\n";
    }

    if (s.mesh.empty()) continue;
    auto kind = primitive_from_string(s.mesh.source);
    if (!kind) {
      // file-backed visuals are referenced, not embedded
      out += "# extern " + s.name + " " + s.mesh.source + "\n";
      continue;
    }
    Diagnostics scratch;
    std::optional<TriMesh> unit;
    switch (*kind) {
      case PrimitiveKind::kCuboid:
        unit = make_primitive(*kind, {1, 1, 1}, scratch);
        break;
      case PrimitiveKind::kCylinder:
        unit = make_primitive(*kind, {0.5, 1}, scratch);
        break;
      case PrimitiveKind::kSphere:
        unit = make_primitive(*kind, {0.5}, scratch);
        break;
    }
    TriMesh mesh = scale_mesh(*unit, s.mesh.dimensions);
    geometry += "o " + s.name + "\n";
    for (const Vec3& v : mesh.vertices) {
      Vec3 world = pose.rotation * (v + s.mesh.center) + pose.translation;
      geometry += "v " + format_double(world.x) + " " + format_double(world.y) + " " +
                  format_double(world.z) + "\n";
    }
    for (const auto& t : mesh.triangles) {
      geometry += "f " + std::to_string(vertex_base + t[0] + 1) + " " +
                  std::to_string(vertex_base + t[1] + 1) + " " +
                  std::to_string(vertex_base + t[2] + 1) + "\n";
    }
    vertex_base += static_cast<int>(mesh.vertices.size());
  }
  return out + geometry;
}

}  // namespace modelforge
