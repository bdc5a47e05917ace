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

#include "modelforge/formats.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "modelforge/numbers.hpp"

namespace modelforge {
namespace {

std::string trim(std::string_view s) {
  std::size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return std::string(s.substr(begin, end - begin));
}

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

struct Line {
  int number = 0;               // 1-based physical line
  std::vector<std::string> fields;  // comma-separated, trimmed
  std::string raw;              // content before the comment, untrimmed
};

// Splits into content lines: '%' starts a comment ('#' too when enabled),
// blank lines are skipped, CRLF accepted.
std::vector<Line> scan_lines(const std::string& text, bool hash_comments = false) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string raw = text.substr(pos, eol == std::string::npos ? eol : eol - pos);
    pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::size_t cut = raw.find('%');
    if (hash_comments) cut = std::min(cut, raw.find('#'));
    if (cut != std::string::npos) raw.resize(cut);
    if (trim(raw).empty()) continue;

    Line line;
    line.number = number;
    line.raw = raw;
    std::size_t field_start = 0;
    while (true) {
      std::size_t comma = raw.find(',', field_start);
      line.fields.push_back(trim(std::string_view(raw).substr(
          field_start, comma == std::string::npos ? comma : comma - field_start)));
      if (comma == std::string::npos) break;
      field_start = comma + 1;
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

std::optional<double> field_double(const Line& line, std::size_t index, Diagnostics& diags,
                                   const std::string& file) {
  auto value = parse_strict_double(line.fields[index]);
  if (!value) {
    diags.error(DiagCode::kNonNumericValue,
                "expected a number, got '" + line.fields[index] + "'", file, line.number);
  }
  return value;
}

bool expect_fields(const Line& line, std::size_t count, Diagnostics& diags,
                   const std::string& file) {
  if (line.fields.size() != count) {
    diags.error(DiagCode::kWrongFieldCount,
                "expected " + std::to_string(count) + " fields, got " +
                    std::to_string(line.fields.size()),
                file, line.number);
    return false;
  }
  return true;
}

}  // namespace

Environment parse_environment(const std::string& text, Diagnostics& diags,
                              const std::string& file) {
  Environment env;
  std::set<std::string> seen;
  std::map<int, ObjectEnv> objects;
  bool any_human_key = false;
  HumanEnv human;

  auto object_at = [&objects](int index) -> ObjectEnv& {
    ObjectEnv& slot = objects[index];
    slot.index = index;
    return slot;
  };

  for (const Line& line : scan_lines(text)) {
    const std::string& key = line.fields[0];
    if (key.empty()) {
      diags.error(DiagCode::kEmptyName, "missing keyword", file, line.number);
      continue;
    }
    if (!seen.insert(key).second) {
      diags.error(DiagCode::kDuplicateKeyword, "duplicate keyword '" + key + "'", file,
                  line.number);
      continue;
    }

    auto value1 = [&]() -> std::optional<std::string> {
      if (line.fields.size() != 2 || line.fields[1].empty()) {
        diags.error(DiagCode::kWrongFieldCount, "keyword '" + key + "' expects a single value",
                    file, line.number);
        return std::nullopt;
      }
      return line.fields[1];
    };

    bool is_human_key = true;
    if (key == "humanModel_Anthropometry") {
      if (auto v = value1()) human.anthropometry_path = *v;
    } else if (key == "humanModel_Description") {
      if (auto v = value1()) human.description_path = *v;
    } else if (key == "humanModel_ScalingAlgorithm") {
      if (auto v = value1()) human.scaling_algorithm = *v;
    } else if (key == "humanModel_CustomSegmentLengths") {
      if (auto v = value1()) human.custom_lengths_path = *v;
    } else if (key == "humanModel_TypeMeshes") {
      if (auto v = value1()) {
        std::string lowered = to_lower(*v);
        if (lowered != "geometric" && lowered != "detailed") {
          diags.error(DiagCode::kInvalidValue,
                      "humanModel_TypeMeshes expects 'geometric' or 'detailed'", file, line.number);
        } else {
          human.type_meshes = lowered;
        }
      }
    } else if (key == "humanModel_AddMarkers") {
      if (auto v = value1()) {
        std::string lowered = to_lower(*v);
        if (lowered == "true") {
          human.add_markers = true;
        } else if (lowered == "false") {
          human.add_markers = false;
        } else {
          diags.error(DiagCode::kInvalidValue, "humanModel_AddMarkers expects 'true' or 'false'",
                      file, line.number);
        }
      }
    } else if (key == "humanModel_Save") {
      if (auto v = value1()) human.save_path = *v;
    } else {
      is_human_key = false;
    }
    if (is_human_key) {
      any_human_key = true;
      continue;
    }

    auto object_key = [&key](const char* prefix) -> std::optional<int> {
      std::string_view k{key};
      std::string_view p{prefix};
      if (k.substr(0, p.size()) != p) return std::nullopt;
      return parse_strict_int(k.substr(p.size()));
    };

    if (auto idx = object_key("objectModel_Description_")) {
      if (auto v = value1()) object_at(*idx).description_path = *v;
    } else if (auto idx = object_key("objectModel_Setup_")) {
      if (auto v = value1()) object_at(*idx).setup_path = *v;
    } else if (auto idx = object_key("objectModel_MassProperties_")) {
      if (auto v = value1()) object_at(*idx).mass_properties_path = *v;
    } else if (auto idx = object_key("objectModel_Save_")) {
      if (auto v = value1()) object_at(*idx).save_path = *v;
    } else if (key == "UseCustomMarkers") {
      if (auto v = value1()) env.custom_markers_path = *v;
    } else if (key == "combinedModel_Save") {
      if (auto v = value1()) env.combined_save_path = *v;
    } else if (key == "OutputFolder") {
      if (auto v = value1()) env.output_folder = *v;
    } else if (key == "Gravity") {
      if (expect_fields(line, 4, diags, file)) {
        auto gx = field_double(line, 1, diags, file);
        auto gy = field_double(line, 2, diags, file);
        auto gz = field_double(line, 3, diags, file);
        if (gx && gy && gz) env.gravity = Vec3{*gx, *gy, *gz};
      }
    } else {
      diags.warning(DiagCode::kUnknownKeyword, "unknown keyword '" + key + "' ignored", file,
                    line.number);
    }
  }

  if (any_human_key) {
    if (human.anthropometry_path.empty()) {
      diags.error(DiagCode::kMissingMandatory, "humanModel_Anthropometry is mandatory", file);
    }
    if (human.description_path.empty()) {
      diags.error(DiagCode::kMissingMandatory, "humanModel_Description is mandatory", file);
    }
    if (human.scaling_algorithm.empty()) {
      diags.error(DiagCode::kMissingMandatory, "humanModel_ScalingAlgorithm is mandatory", file);
    }
    env.human = human;
  }

  int expected = 1;
  for (const auto& [index, object] : objects) {
    if (index != expected) {
      diags.error(DiagCode::kGappedObjectIndex,
                  "object indices must be contiguous from 1; found " + std::to_string(index) +
                      " after " + std::to_string(expected - 1),
                  file);
    }
    expected = index + 1;
    if (object.description_path.empty()) {
      diags.error(DiagCode::kMissingMandatory,
                  "objectModel_Description_" + std::to_string(index) + " is mandatory", file);
    }
    if (object.setup_path.empty()) {
      diags.error(DiagCode::kMissingMandatory,
                  "objectModel_Setup_" + std::to_string(index) + " is mandatory", file);
    }
    env.objects.push_back(object);
  }
  return env;
}

ModelDescription parse_description(const std::string& text, Diagnostics& diags,
                                   const std::string& file) {
  ModelDescription description;
  for (const Line& line : scan_lines(text)) {
    if (line.fields.size() < 4 || line.fields.size() > 6) {
      diags.error(DiagCode::kWrongFieldCount,
                  "description lines have 4 to 6 fields, got " +
                      std::to_string(line.fields.size()),
                  file, line.number);
      continue;
    }
    DescriptionLine entry;
    entry.line = line.number;
    entry.segment_name = line.fields[0];
    entry.segment_type = line.fields[1];
    entry.joint_code = line.fields[2];
    entry.parent_name = line.fields[3];
    if (line.fields.size() >= 5) entry.point_set = line.fields[4];
    if (line.fields.size() >= 6) entry.constraint_set = line.fields[5];
    if (entry.segment_name.empty() || entry.segment_type.empty() || entry.joint_code.empty() ||
        entry.parent_name.empty()) {
      diags.error(DiagCode::kEmptyName, "description fields 1-4 must be non-empty", file,
                  line.number);
      continue;
    }
    description.lines.push_back(std::move(entry));
  }
  return description;
}

AnthropometryProfile parse_anthropometry(const std::string& text, Diagnostics& diags,
                                         const std::string& file) {
  AnthropometryProfile profile;
  std::set<std::string> seen;
  for (const Line& line : scan_lines(text)) {
    if (!expect_fields(line, 2, diags, file)) continue;
    const std::string& key = line.fields[0];
    if (!seen.insert(key).second) {
      diags.error(DiagCode::kDuplicateKeyword, "duplicate keyword '" + key + "'", file,
                  line.number);
      continue;
    }
    if (key == "gender") {
      std::string value = to_lower(line.fields[1]);
      if (value == "male") {
        profile.gender = Gender::kMale;
      } else if (value == "female") {
        profile.gender = Gender::kFemale;
      } else {
        diags.error(DiagCode::kInvalidValue, "gender must be 'male' or 'female'", file,
                    line.number);
      }
      continue;
    }

    auto value = field_double(line, 1, diags, file);
    if (!value) continue;
    auto positive = [&](std::optional<double>& slot) {
      if (*value <= 0) {
        diags.error(DiagCode::kNegativeLength, "'" + key + "' must be strictly positive", file,
                    line.number);
      } else {
        slot = *value;
      }
    };
    if (key == "age") {
      if (*value < 0) {
        diags.error(DiagCode::kInvalidValue, "age must be non-negative", file, line.number);
      } else {
        profile.age = *value;
      }
    } else if (key == "height") {
      positive(profile.height);
    } else if (key == "weight") {
      positive(profile.weight);
    } else if (key == "pelvisWidth") {
      positive(profile.pelvis_width);
    } else if (key == "hipCenterDistance") {
      positive(profile.hip_center_distance);
    } else if (key == "shoulderCenterDistance") {
      positive(profile.shoulder_center_distance);
    } else if (key == "footLength") {
      positive(profile.foot_length);
    } else if (key == "footWidth") {
      positive(profile.foot_width);
    } else if (key == "heelAnkleOffset") {
      positive(profile.heel_ankle_offset);
    } else if (key == "ankleHeight") {
      positive(profile.ankle_height);
    } else {
      diags.error(DiagCode::kUnknownKeyword, "unknown anthropometry keyword '" + key + "'", file,
                  line.number);
    }
  }
  return profile;
}

std::map<std::string, double> parse_segment_lengths(const std::string& text, Diagnostics& diags,
                                                    const std::string& file) {
  std::map<std::string, double> lengths;
  for (const Line& line : scan_lines(text)) {
    if (!expect_fields(line, 2, diags, file)) continue;
    auto value = field_double(line, 0, diags, file);
    if (!value) continue;
    const std::string& name = line.fields[1];
    if (name.empty()) {
      diags.error(DiagCode::kEmptyName, "missing segment name", file, line.number);
      continue;
    }
    if (*value <= 0) {
      diags.error(DiagCode::kNegativeLength, "segment length must be strictly positive", file,
                  line.number);
      continue;
    }
    if (!lengths.emplace(name, *value).second) {
      diags.error(DiagCode::kDuplicateKeyword, "duplicate length for '" + name + "'", file,
                  line.number);
    }
  }
  return lengths;
}

MarkerSpec parse_marker_file(const std::string& text, Diagnostics& diags,
                             const std::string& file) {
  MarkerSpec spec;
  std::vector<Line> lines = scan_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Line& header = lines[i];
    if (header.fields.size() < 2 || header.fields.size() > 3) {
      diags.error(DiagCode::kWrongFieldCount,
                  "marker header lines have 2 or 3 fields (segment, type[, distance])", file,
                  header.number);
      continue;
    }
    MarkerEntry entry;
    entry.line = header.number;
    entry.segment = header.fields[0];
    if (entry.segment.empty()) {
      diags.error(DiagCode::kEmptyName, "missing segment name", file, header.number);
      continue;
    }
    auto type = marker_type_from_string(header.fields[1]);
    if (!type) {
      diags.error(DiagCode::kUnknownMarkerType, "unknown marker type '" + header.fields[1] + "'",
                  file, header.number);
      continue;
    }
    entry.type = *type;
    if (header.fields.size() == 3 && !header.fields[2].empty()) {
      auto d = field_double(header, 2, diags, file);
      if (!d) continue;
      entry.distance = *d;
    } else if (entry.type != MarkerEntry::Type::kMarker) {
      diags.error(DiagCode::kWrongFieldCount,
                  to_string(entry.type) + " requires a marker distance", file, header.number);
      continue;
    }

    if (i + 1 >= lines.size()) {
      diags.error(DiagCode::kWrongFieldCount, "marker entry is missing its names line", file,
                  header.number);
      break;
    }
    const Line& names = lines[++i];
    if (!expect_fields(names, 12, diags, file)) continue;

    bool ok = true;
    for (int f = 0; f < 6 && ok; ++f) {
      if (!names.fields[f].empty()) {
        entry.names.push_back(names.fields[f]);
      } else {
        // all remaining name slots must stay empty
        for (int g = f + 1; g < 6; ++g) {
          if (!names.fields[g].empty()) {
            diags.error(DiagCode::kNameCountMismatch, "marker names must be left-aligned", file,
                        names.number);
            ok = false;
            break;
          }
        }
        break;
      }
    }
    if (!ok) continue;
    int required = marker_name_count(entry.type);
    if (static_cast<int>(entry.names.size()) != required) {
      diags.error(DiagCode::kNameCountMismatch,
                  to_string(entry.type) + " requires " + std::to_string(required) +
                      " marker name(s), got " + std::to_string(entry.names.size()),
                  file, names.number);
      continue;
    }
    auto tx = field_double(names, 6, diags, file);
    auto ty = field_double(names, 7, diags, file);
    auto tz = field_double(names, 8, diags, file);
    auto rx = field_double(names, 9, diags, file);
    auto ry = field_double(names, 10, diags, file);
    auto rz = field_double(names, 11, diags, file);
    if (!(tx && ty && tz && rx && ry && rz)) continue;
    entry.translation = {*tx, *ty, *tz};
    entry.rotation_deg = {*rx, *ry, *rz};
    spec.entries.push_back(std::move(entry));
  }
  return spec;
}

MassPolicyMap parse_mass_properties(const std::string& text, Diagnostics& diags,
                                    const std::string& file) {
  MassPolicyMap policies;
  for (const Line& line : scan_lines(text)) {
    if (line.fields.size() < 2) {
      diags.error(DiagCode::kWrongFieldCount, "mass property lines need at least 2 fields", file,
                  line.number);
      continue;
    }
    const std::string& segment = line.fields[0];
    const std::string& keyword = line.fields[1];
    if (segment.empty()) {
      diags.error(DiagCode::kEmptyName, "missing segment name", file, line.number);
      continue;
    }
    MassPolicy policy;
    if (keyword == "UseMeanDensity") {
      if (!expect_fields(line, 3, diags, file)) continue;
      auto density = field_double(line, 2, diags, file);
      if (!density) continue;
      if (*density < 0) {
        diags.error(DiagCode::kInvalidValue, "density must be non-negative", file, line.number);
        continue;
      }
      policy.kind = MassPolicy::Kind::kMeanDensity;
      policy.density = *density;
    } else if (keyword == "UseUserValues") {
      if (!expect_fields(line, 15, diags, file)) continue;
      std::array<double, 13> values{};
      bool ok = true;
      for (std::size_t f = 0; f < values.size(); ++f) {
        auto v = field_double(line, f + 2, diags, file);
        if (!v) {
          ok = false;
          break;
        }
        values[f] = *v;
      }
      if (!ok) continue;
      if (values[0] < 0) {
        diags.error(DiagCode::kInvalidValue, "mass must be non-negative", file, line.number);
        continue;
      }
      policy.kind = MassPolicy::Kind::kUserValues;
      policy.user.mass = values[0];
      policy.user.com = {values[1], values[2], values[3]};
      // the 9 inertia entries are row-major
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) policy.user.inertia(r, c) = values[4 + 3 * r + c];
      }
    } else {
      diags.error(DiagCode::kUnknownMassPolicy, "unknown mass policy '" + keyword + "'", file,
                  line.number);
      continue;
    }
    if (!policies.emplace(segment, policy).second) {
      diags.error(DiagCode::kDuplicateKeyword, "duplicate mass policy for '" + segment + "'", file,
                  line.number);
    }
  }
  return policies;
}

ObjectSetup parse_object_setup(const std::string& text, Diagnostics& diags,
                               const std::string& file) {
  ObjectSetup setup;
  auto entry_for = [&setup](const std::string& type, int line) -> ObjectSetupEntry& {
    for (auto& e : setup.entries) {
      if (e.segment_type == type) return e;
    }
    ObjectSetupEntry e;
    e.segment_type = type;
    e.line = line;
    setup.entries.push_back(std::move(e));
    return setup.entries.back();
  };

  for (const Line& line : scan_lines(text)) {
    if (line.fields.size() < 3) {
      diags.error(DiagCode::kWrongFieldCount,
                  "setup lines need at least 3 fields (type, key, value...)", file, line.number);
      continue;
    }
    const std::string& type = line.fields[0];
    const std::string& key = line.fields[1];
    if (type.empty()) {
      diags.error(DiagCode::kEmptyName, "missing segment type", file, line.number);
      continue;
    }
    ObjectSetupEntry& entry = entry_for(type, line.number);
    if (key == "length") {
      if (!expect_fields(line, 3, diags, file)) continue;
      auto value = field_double(line, 2, diags, file);
      if (!value) continue;
      if (*value <= 0) {
        diags.error(DiagCode::kNegativeLength, "length must be strictly positive", file,
                    line.number);
        continue;
      }
      entry.length = *value;
    } else if (key == "scale_to") {
      if (!expect_fields(line, 3, diags, file)) continue;
      entry.scale_to = line.fields[2];
    } else if (key == "mesh") {
      const std::string& shape = line.fields[2];
      if (shape != "cuboid" && shape != "cylinder" && shape != "sphere" && shape != "file") {
        diags.error(DiagCode::kUnknownMeshRef, "unknown mesh shape '" + shape + "'", file,
                    line.number);
        continue;
      }
      entry.mesh_shape = shape;
      entry.mesh_dims.assign(line.fields.begin() + 3, line.fields.end());
    } else if (key == "mesh_center") {
      if (!expect_fields(line, 5, diags, file)) continue;
      auto x = field_double(line, 2, diags, file);
      auto y = field_double(line, 3, diags, file);
      auto z = field_double(line, 4, diags, file);
      if (x && y && z) entry.mesh_center = {*x, *y, *z};
    } else if (key == "mass") {
      if (!expect_fields(line, 15, diags, file)) continue;
      std::array<double, 13> values{};
      bool ok = true;
      for (std::size_t f = 0; f < values.size(); ++f) {
        auto v = field_double(line, f + 2, diags, file);
        if (!v) {
          ok = false;
          break;
        }
        values[f] = *v;
      }
      if (!ok) continue;
      MassProperties mass;
      mass.mass = values[0];
      mass.com = {values[1], values[2], values[3]};
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) mass.inertia(r, c) = values[4 + 3 * r + c];
      }
      entry.inline_mass = mass;
    } else {
      diags.error(DiagCode::kUnknownKeyword, "unknown setup key '" + key + "'", file, line.number);
    }
  }
  return setup;
}

ScalingTable parse_scaling_table(const std::string& text, Diagnostics& diags,
                                 const std::string& file) {
  ScalingTable table;
  std::vector<Line> lines = scan_lines(text);
  if (lines.empty()) {
    diags.error(DiagCode::kBadScalingTable, "scaling table is empty", file);
    return table;
  }

  const Line& header = lines.front();
  std::vector<std::string> heading;
  for (const auto& f : header.fields) heading.push_back(to_lower(f));
  const std::vector<std::string> regression_header = {
      "segment_type", "gender", "length_fraction", "mass_fraction",
      "com_fraction", "rgyr_x", "rgyr_y", "rgyr_z"};
  const std::vector<std::string> child_header = {"segment_type", "a",      "b",     "com_fraction",
                                                 "rgyr_x",       "rgyr_y", "rgyr_z"};
  bool child = false;
  if (heading == regression_header) {
    child = false;
  } else if (heading == child_header) {
    child = true;
    table.algorithm = ScalingAlgorithm::kJensenChild;
  } else {
    diags.error(DiagCode::kBadScalingTable, "unrecognized scaling table header", file,
                header.number);
    return table;
  }

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (!expect_fields(line, heading.size(), diags, file)) continue;
    const std::string& type = line.fields[0];
    if (type.empty()) {
      diags.error(DiagCode::kEmptyName, "missing segment type", file, line.number);
      continue;
    }
    std::size_t first_number = child ? 1 : 2;
    std::vector<double> values;
    bool ok = true;
    for (std::size_t f = first_number; f < line.fields.size(); ++f) {
      auto v = field_double(line, f, diags, file);
      if (!v) {
        ok = false;
        break;
      }
      values.push_back(*v);
    }
    if (!ok) continue;

    if (child) {
      ScalingTable::ChildRow row;
      row.a = values[0];
      row.b = values[1];
      row.com_fraction = values[2];
      row.rgyr = {values[3], values[4], values[5]};
      if (row.a < 0 || row.com_fraction < 0 || row.rgyr.x < 0 || row.rgyr.y < 0 || row.rgyr.z < 0) {
        diags.error(DiagCode::kBadScalingTable, "fractions must be non-negative", file,
                    line.number);
        continue;
      }
      table.child[type] = row;
    } else {
      std::string gender_token = to_lower(line.fields[1]);
      Gender gender;
      if (gender_token == "male") {
        gender = Gender::kMale;
      } else if (gender_token == "female") {
        gender = Gender::kFemale;
      } else {
        diags.error(DiagCode::kInvalidValue, "gender must be 'male' or 'female'", file,
                    line.number);
        continue;
      }
      ScalingTable::RegressionRow row;
      row.length_fraction = values[0];
      row.mass_fraction = values[1];
      row.com_fraction = values[2];
      row.rgyr = {values[3], values[4], values[5]};
      if (row.length_fraction < 0 || row.mass_fraction < 0 || row.com_fraction < 0 ||
          row.rgyr.x < 0 || row.rgyr.y < 0 || row.rgyr.z < 0) {
        diags.error(DiagCode::kBadScalingTable, "fractions must be non-negative", file,
                    line.number);
        continue;
      }
      table.regression[type][gender] = row;
    }
  }

  // whole-body sanity: per-gender mass fractions should account for the body
  if (!child) {
    for (Gender gender : {Gender::kMale, Gender::kFemale}) {
      double sum = 0;
      bool any = false;
      for (const auto& [type, per_gender] : table.regression) {
        (void)type;
        auto it = per_gender.find(gender);
        if (it != per_gender.end()) {
          sum += it->second.mass_fraction;
          any = true;
        }
      }
      if (any && std::fabs(sum - 1.0) > 0.005) {
        diags.warning(DiagCode::kBadScalingTable,
                      std::string("mass fractions for ") +
                          (gender == Gender::kMale ? "male" : "female") + " sum to " +
                          format_double(sum) + ", expected 1 +/- 0.005",
                      file);
      }
    }
  }
  return table;
}

Dictionary parse_dictionary_extension(const std::string& text, Diagnostics& diags,
                                      const std::string& file) {
  Dictionary dict;
  std::string section;
  for (const Line& line : scan_lines(text, /*hash_comments=*/true)) {
    std::string raw = trim(line.raw);
    if (raw.size() >= 2 && raw.front() == '[' && raw.back() == ']') {
      section = raw.substr(1, raw.size() - 2);
      if (section != "joints" && section != "points" && section != "constraints" &&
          section != "loops") {
        diags.error(DiagCode::kUnknownKeyword, "unknown section [" + section + "]", file,
                    line.number);
        section.clear();
      }
      continue;
    }
    if (section.empty()) {
      diags.error(DiagCode::kUnknownKeyword, "entry outside of any section", file, line.number);
      continue;
    }

    if (section == "joints") {
      if (line.fields.size() < 2) {
        diags.error(DiagCode::kWrongFieldCount, "joint entries: name, code[, payload]", file,
                    line.number);
        continue;
      }
      auto joint = parse_joint_code(line.fields[1], diags, file, line.number);
      if (!joint) continue;
      if (line.fields.size() > 2) {
        // payload is the raw remainder and may itself contain commas
        std::size_t first = line.raw.find(',');
        std::size_t second = line.raw.find(',', first + 1);
        joint->custom_payload = trim(std::string_view(line.raw).substr(second + 1));
      }
      dict.joints[line.fields[0]] = std::move(*joint);
    } else if (section == "points") {
      if (!expect_fields(line, 5, diags, file)) continue;
      auto x = field_double(line, 2, diags, file);
      auto y = field_double(line, 3, diags, file);
      auto z = field_double(line, 4, diags, file);
      if (!(x && y && z)) continue;
      PointSet& set = dict.point_sets[line.fields[0]];
      set.name = line.fields[0];
      if (set.find(line.fields[1]) != nullptr) {
        diags.error(DiagCode::kDuplicateKeyword,
                    "duplicate point '" + line.fields[1] + "' in set '" + set.name + "'", file,
                    line.number);
        continue;
      }
      set.entries.push_back({line.fields[1], {*x, *y, *z}});
    } else if (section == "constraints") {
      if (!expect_fields(line, 6, diags, file)) continue;
      auto nx = field_double(line, 3, diags, file);
      auto ny = field_double(line, 4, diags, file);
      auto nz = field_double(line, 5, diags, file);
      if (!(nx && ny && nz)) continue;
      Vec3 normal{*nx, *ny, *nz};
      if (std::fabs(normal.norm() - 1.0) > 1e-9) {
        diags.error(DiagCode::kNonUnitNormal, "constraint normal must have unit length", file,
                    line.number);
        continue;
      }
      ConstraintSet& set = dict.constraint_sets[line.fields[0]];
      set.name = line.fields[0];
      ConstraintSet::Subset* subset = nullptr;
      for (auto& s : set.subsets) {
        if (s.name == line.fields[1]) subset = &s;
      }
      if (subset == nullptr) {
        set.subsets.push_back({line.fields[1], {}});
        subset = &set.subsets.back();
      }
      subset->rows.push_back({line.fields[2], normal});
    } else if (section == "loops") {
      if (!expect_fields(line, 11, diags, file)) continue;
      LoopConstraintSet::Row row;
      row.predecessor_body = line.fields[1];
      row.predecessor_point = line.fields[2];
      row.successor_body = line.fields[3];
      row.successor_point = line.fields[4];
      bool ok = true;
      for (int a = 0; a < 6; ++a) {
        auto v = field_double(line, 5 + a, diags, file);
        if (!v) {
          ok = false;
          break;
        }
        row.axis[a] = *v;
      }
      if (!ok) continue;
      if (row.predecessor_body == row.successor_body) {
        diags.error(DiagCode::kInvalidValue,
                    "loop constraints must reference two distinct bodies", file, line.number);
        continue;
      }
      LoopConstraintSet& set = dict.loop_sets[line.fields[0]];
      set.name = line.fields[0];
      set.rows.push_back(std::move(row));
    }
  }
  return dict;
}

std::vector<DefaultMarkerRow> parse_default_markerset(const std::string& text, Diagnostics& diags,
                                                      const std::string& file) {
  std::vector<DefaultMarkerRow> rows;
  for (const Line& line : scan_lines(text)) {
    if (!expect_fields(line, 5, diags, file)) continue;
    auto x = field_double(line, 2, diags, file);
    auto y = field_double(line, 3, diags, file);
    auto z = field_double(line, 4, diags, file);
    if (!(x && y && z)) continue;
    rows.push_back({line.fields[0], line.fields[1], {*x, *y, *z}});
  }
  return rows;
}

std::vector<std::string> parse_manifest(const std::string& text, Diagnostics& diags,
                                        const std::string& file) {
  (void)diags;
  (void)file;
  std::vector<std::string> paths;
  for (const Line& line : scan_lines(text)) {
    paths.push_back(trim(line.raw));
  }
  return paths;
}

namespace {

std::string join_csv(std::initializer_list<std::string> fields) {
  std::string out;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out += ", ";
    out += f;
    first = false;
  }
  out += '\n';
  return out;
}

}  // namespace

std::string serialize_environment(const Environment& env) {
  std::string out;
  if (env.human) {
    const HumanEnv& h = *env.human;
    out += join_csv({"humanModel_Anthropometry", h.anthropometry_path});
    out += join_csv({"humanModel_Description", h.description_path});
    out += join_csv({"humanModel_ScalingAlgorithm", h.scaling_algorithm});
    if (!h.custom_lengths_path.empty()) {
      out += join_csv({"humanModel_CustomSegmentLengths", h.custom_lengths_path});
    }
    if (h.type_meshes != "geometric") out += join_csv({"humanModel_TypeMeshes", h.type_meshes});
    if (h.add_markers) out += join_csv({"humanModel_AddMarkers", "true"});
    if (!h.save_path.empty()) out += join_csv({"humanModel_Save", h.save_path});
  }
  for (const ObjectEnv& o : env.objects) {
    std::string k = std::to_string(o.index);
    out += join_csv({"objectModel_Description_" + k, o.description_path});
    out += join_csv({"objectModel_Setup_" + k, o.setup_path});
    if (!o.mass_properties_path.empty()) {
      out += join_csv({"objectModel_MassProperties_" + k, o.mass_properties_path});
    }
    if (!o.save_path.empty()) out += join_csv({"objectModel_Save_" + k, o.save_path});
  }
  if (!env.custom_markers_path.empty()) {
    out += join_csv({"UseCustomMarkers", env.custom_markers_path});
  }
  if (!env.combined_save_path.empty()) {
    out += join_csv({"combinedModel_Save", env.combined_save_path});
  }
  if (env.output_folder != ".") out += join_csv({"OutputFolder", env.output_folder});
  if (env.gravity) {
    out += join_csv({"Gravity", format_double(env.gravity->x), format_double(env.gravity->y),
                     format_double(env.gravity->z)});
  }
  return out;
}

std::string serialize_description(const ModelDescription& description) {
  std::string out;
  for (const DescriptionLine& l : description.lines) {
    std::string row = l.segment_name + ", " + l.segment_type + ", " + l.joint_code + ", " +
                      l.parent_name;
    if (!l.point_set.empty() || !l.constraint_set.empty()) {
      row += ", " + l.point_set;
    }
    if (!l.constraint_set.empty()) {
      row += ", " + l.constraint_set;
    }
    out += row + '\n';
  }
  return out;
}

std::string serialize_anthropometry(const AnthropometryProfile& profile) {
  std::string out;
  if (profile.gender) {
    out += join_csv({"gender", *profile.gender == Gender::kMale ? "male" : "female"});
  }
  auto emit = [&out](const char* key, const std::optional<double>& value) {
    if (value) out += join_csv({key, format_double(*value)});
  };
  emit("age", profile.age);
  emit("height", profile.height);
  emit("weight", profile.weight);
  emit("pelvisWidth", profile.pelvis_width);
  emit("hipCenterDistance", profile.hip_center_distance);
  emit("shoulderCenterDistance", profile.shoulder_center_distance);
  emit("footLength", profile.foot_length);
  emit("footWidth", profile.foot_width);
  emit("heelAnkleOffset", profile.heel_ankle_offset);
  emit("ankleHeight", profile.ankle_height);
  return out;
}

std::string serialize_segment_lengths(const std::map<std::string, double>& lengths) {
  std::string out;
  for (const auto& [name, value] : lengths) {
    out += join_csv({format_double(value), name});
  }
  return out;
}

std::string serialize_marker_file(const MarkerSpec& spec) {
  std::string out;
  for (const MarkerEntry& e : spec.entries) {
    if (e.type == MarkerEntry::Type::kMarker && e.distance == 0) {
      out += join_csv({e.segment, to_string(e.type)});
    } else {
      out += join_csv({e.segment, to_string(e.type), format_double(e.distance)});
    }
    std::string row;
    for (int i = 0; i < 6; ++i) {
      row += i < static_cast<int>(e.names.size()) ? e.names[i] : "";
      row += ", ";
    }
    row += format_double(e.translation.x) + ", " + format_double(e.translation.y) + ", " +
           format_double(e.translation.z) + ", " + format_double(e.rotation_deg.x) + ", " +
           format_double(e.rotation_deg.y) + ", " + format_double(e.rotation_deg.z);
    out += row + '\n';
  }
  return out;
}

std::string serialize_mass_properties(const MassPolicyMap& policies) {
  std::string out;
  for (const auto& [segment, policy] : policies) {
    if (policy.kind == MassPolicy::Kind::kMeanDensity) {
      out += join_csv({segment, "UseMeanDensity", format_double(policy.density)});
    } else {
      std::string row = segment + ", UseUserValues, " + format_double(policy.user.mass) + ", " +
                        format_double(policy.user.com.x) + ", " + format_double(policy.user.com.y) +
                        ", " + format_double(policy.user.com.z);
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) row += ", " + format_double(policy.user.inertia(r, c));
      }
      out += row + '\n';
    }
  }
  return out;
}

std::string serialize_object_setup(const ObjectSetup& setup) {
  std::string out;
  for (const ObjectSetupEntry& e : setup.entries) {
    if (e.length) out += join_csv({e.segment_type, "length", format_double(*e.length)});
    if (!e.scale_to.empty()) out += join_csv({e.segment_type, "scale_to", e.scale_to});
    if (!e.mesh_shape.empty()) {
      std::string row = e.segment_type + ", mesh, " + e.mesh_shape;
      for (const auto& d : e.mesh_dims) row += ", " + d;
      out += row + '\n';
    }
    if (!(e.mesh_center == Vec3{0, 0, 0})) {
      out += join_csv({e.segment_type, "mesh_center", format_double(e.mesh_center.x),
                       format_double(e.mesh_center.y), format_double(e.mesh_center.z)});
    }
    if (e.inline_mass) {
      std::string row = e.segment_type + ", mass, " + format_double(e.inline_mass->mass) + ", " +
                        format_double(e.inline_mass->com.x) + ", " +
                        format_double(e.inline_mass->com.y) + ", " +
                        format_double(e.inline_mass->com.z);
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) row += ", " + format_double(e.inline_mass->inertia(r, c));
      }
      out += row + '\n';
    }
  }
  return out;
}

std::string serialize_scaling_table(const ScalingTable& table) {
  std::string out;
  if (table.is_child_table()) {
    out += "segment_type, a, b, com_fraction, rgyr_x, rgyr_y, rgyr_z\n";
    for (const auto& [type, row] : table.child) {
      out += join_csv({type, format_double(row.a), format_double(row.b),
                       format_double(row.com_fraction), format_double(row.rgyr.x),
                       format_double(row.rgyr.y), format_double(row.rgyr.z)});
    }
  } else {
    out += "segment_type, gender, length_fraction, mass_fraction, com_fraction, rgyr_x, rgyr_y, "
           "rgyr_z\n";
    for (const auto& [type, per_gender] : table.regression) {
      for (const auto& [gender, row] : per_gender) {
        out += join_csv({type, gender == Gender::kMale ? "male" : "female",
                         format_double(row.length_fraction), format_double(row.mass_fraction),
                         format_double(row.com_fraction), format_double(row.rgyr.x),
                         format_double(row.rgyr.y), format_double(row.rgyr.z)});
      }
    }
  }
  return out;
}

}  // namespace modelforge
