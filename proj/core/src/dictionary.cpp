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

#include "modelforge/dictionary.hpp"

#include <cctype>

namespace modelforge {
namespace {

// Column layout of the motion subspace: RX RY RZ TX TY TZ.
int axis_column(char motion, char axis) {
  int base;
  if (motion == 'R') {
    base = 0;
  } else if (motion == 'T') {
    base = 3;
  } else {
    return -1;
  }
  if (axis == 'X') return base + 0;
  if (axis == 'Y') return base + 1;
  if (axis == 'Z') return base + 2;
  return -1;
}

const char* kAxisTokens[6] = {"RX", "RY", "RZ", "TX", "TY", "TZ"};

JointDescriptor make_joint(const std::string& code) {
  Diagnostics sink;
  auto joint = parse_joint_code(code, sink);
  return *joint;  // built-in codes always parse
}

}  // namespace

const PointSet::Entry* PointSet::find(std::string_view point_name) const {
  for (const auto& e : entries) {
    if (e.name == point_name) return &e;
  }
  return nullptr;
}

const ConstraintSet::Subset* ConstraintSet::find(std::string_view subset_name) const {
  for (const auto& s : subsets) {
    if (s.name == subset_name) return &s;
  }
  return nullptr;
}

const JointDescriptor* Dictionary::find_joint(std::string_view name) const {
  auto it = joints.find(std::string(name));
  return it == joints.end() ? nullptr : &it->second;
}

const PointSet* Dictionary::find_point_set(std::string_view name) const {
  auto it = point_sets.find(std::string(name));
  return it == point_sets.end() ? nullptr : &it->second;
}

const ConstraintSet* Dictionary::find_constraint_set(std::string_view name) const {
  auto it = constraint_sets.find(std::string(name));
  return it == constraint_sets.end() ? nullptr : &it->second;
}

const LoopConstraintSet* Dictionary::find_loop_set(std::string_view name) const {
  auto it = loop_sets.find(std::string(name));
  return it == loop_sets.end() ? nullptr : &it->second;
}

std::optional<JointDescriptor> parse_joint_code(std::string_view code, Diagnostics& diags,
                                                const std::string& file, int line) {
  if (code.empty()) {
    diags.error(DiagCode::kMalformedJointCode, "empty joint code", file, line);
    return std::nullopt;
  }
  if (code.size() % 2 != 0) {
    diags.error(DiagCode::kMalformedJointCode,
                "joint code '" + std::string(code) + "' has odd length", file, line);
    return std::nullopt;
  }
  JointDescriptor joint;
  joint.code.reserve(code.size());
  for (std::size_t i = 0; i < code.size(); i += 2) {
    char motion = static_cast<char>(std::toupper(static_cast<unsigned char>(code[i])));
    char axis = static_cast<char>(std::toupper(static_cast<unsigned char>(code[i + 1])));
    int column = axis_column(motion, axis);
    if (column < 0) {
      diags.error(DiagCode::kMalformedJointCode,
                  "unknown axis token '" + std::string{code[i], code[i + 1]} + "' in joint code '" +
                      std::string(code) + "'",
                  file, line);
      return std::nullopt;
    }
    Vec6 row{};
    row[column] = 1.0;
    joint.rows.push_back(row);
    joint.code.push_back(motion);
    joint.code.push_back(axis);
  }
  return joint;
}

std::string serialize_joint_code(const JointDescriptor& joint) {
  std::string code;
  for (const Vec6& row : joint.rows) {
    for (int c = 0; c < 6; ++c) {
      if (row[c] == 1.0) {
        code += kAxisTokens[c];
        break;
      }
    }
  }
  return code;
}

Dictionary builtin_dictionary() {
  Dictionary dict;

  for (const char* token : kAxisTokens) {
    dict.joints["Joint_" + std::string(token)] = make_joint(token);
  }
  dict.joints["Joint_Root2D_TXTZRY"] = make_joint("TXTZRY");
  dict.joints["Joint_Root3D_TXTYTZRXRYRZ"] = make_joint("TXTYTZRXRYRZ");

  PointSet hand_r;
  hand_r.name = "Points_Hand_R_3D";
  hand_r.entries = {
      {"ProximalMetacarpal_Medial_R", {-0.2, 0.15, -0.2}},
      {"ProximalMetacarpal_Lateral_R", {0.2, 0.15, -0.2}},
      {"DistalMetacarpal_Medial_R", {-0.2, 0.15, -0.6}},
      {"DistalMetacarpal_Lateral_R", {0.2, 0.15, -0.6}},
  };
  dict.point_sets[hand_r.name] = hand_r;

  PointSet hand_l;
  hand_l.name = "Points_Hand_L_3D";
  hand_l.entries = {
      {"ProximalMetacarpal_Medial_L", {-0.2, -0.15, -0.2}},
      {"ProximalMetacarpal_Lateral_L", {0.2, -0.15, -0.2}},
      {"DistalMetacarpal_Medial_L", {-0.2, -0.15, -0.6}},
      {"DistalMetacarpal_Lateral_L", {0.2, -0.15, -0.6}},
  };
  dict.point_sets[hand_l.name] = hand_l;

  // Nominal foot landmark fractions; replaced by measured anthropometry when
  // the profile provides foot dimensions.
  PointSet foot_sagittal;
  foot_sagittal.name = "Points_Foot_Sagittal";
  foot_sagittal.entries = {
      {"Heel_Sagittal", {-0.25, 0.0, -0.25}},
      {"Toe_Sagittal", {0.75, 0.0, -0.25}},
  };
  dict.point_sets[foot_sagittal.name] = foot_sagittal;

  PointSet foot_r;
  foot_r.name = "Points_Foot_R_3D";
  foot_r.entries = {
      {"Heel_R", {-0.25, 0.0, -0.25}},
      {"Toe_Medial_R", {0.75, 0.175, -0.25}},
      {"Toe_Lateral_R", {0.75, -0.175, -0.25}},
  };
  dict.point_sets[foot_r.name] = foot_r;

  PointSet foot_l;
  foot_l.name = "Points_Foot_L_3D";
  foot_l.entries = {
      {"Heel_L", {-0.25, 0.0, -0.25}},
      {"Toe_Medial_L", {0.75, -0.175, -0.25}},
      {"Toe_Lateral_L", {0.75, 0.175, -0.25}},
  };
  dict.point_sets[foot_l.name] = foot_l;

  ConstraintSet foot;
  foot.name = "ConstraintSet_Foot_Sagittal";
  foot.subsets = {
      {"FootFlat_Sagittal",
       {{"Heel_Sagittal", {1, 0, 0}}, {"Heel_Sagittal", {0, 0, 1}}, {"Toe_Sagittal", {0, 0, 1}}}},
      {"HeelFixed_Sagittal", {{"Heel_Sagittal", {1, 0, 0}}, {"Heel_Sagittal", {0, 0, 1}}}},
      {"ToeFixed_Sagittal", {{"Toe_Sagittal", {1, 0, 0}}, {"Toe_Sagittal", {0, 0, 1}}}},
  };
  dict.constraint_sets[foot.name] = foot;

  ConstraintSet foot_r_3d;
  foot_r_3d.name = "ConstraintSet_Foot_R_3D";
  foot_r_3d.subsets = {
      {"FootFlat_R",
       {{"Heel_R", {1, 0, 0}},
        {"Heel_R", {0, 1, 0}},
        {"Heel_R", {0, 0, 1}},
        {"Toe_Medial_R", {0, 0, 1}},
        {"Toe_Lateral_R", {0, 0, 1}}}},
      {"HeelFixed_R", {{"Heel_R", {1, 0, 0}}, {"Heel_R", {0, 1, 0}}, {"Heel_R", {0, 0, 1}}}},
  };
  dict.constraint_sets[foot_r_3d.name] = foot_r_3d;

  ConstraintSet foot_l_3d;
  foot_l_3d.name = "ConstraintSet_Foot_L_3D";
  foot_l_3d.subsets = {
      {"FootFlat_L",
       {{"Heel_L", {1, 0, 0}},
        {"Heel_L", {0, 1, 0}},
        {"Heel_L", {0, 0, 1}},
        {"Toe_Medial_L", {0, 0, 1}},
        {"Toe_Lateral_L", {0, 0, 1}}}},
      {"HeelFixed_L", {{"Heel_L", {1, 0, 0}}, {"Heel_L", {0, 1, 0}}, {"Heel_L", {0, 0, 1}}}},
  };
  dict.constraint_sets[foot_l_3d.name] = foot_l_3d;

  return dict;
}

Dictionary merge_custom_dictionary(const Dictionary& base, const Dictionary& extension,
                                   Diagnostics& diags) {
  Dictionary merged = base;
  auto merge_map = [&diags](auto& dst, const auto& src, const char* kind) {
    for (const auto& [name, value] : src) {
      auto [it, inserted] = dst.insert_or_assign(name, value);
      (void)it;
      if (!inserted) {
        diags.warning(DiagCode::kDictionaryOverride,
                      std::string("custom ") + kind + " '" + name + "' overrides built-in entry");
      }
    }
  };
  merge_map(merged.joints, extension.joints, "joint");
  merge_map(merged.point_sets, extension.point_sets, "point set");
  merge_map(merged.constraint_sets, extension.constraint_sets, "constraint set");
  merge_map(merged.loop_sets, extension.loop_sets, "loop constraint set");
  return merged;
}

}  // namespace modelforge
