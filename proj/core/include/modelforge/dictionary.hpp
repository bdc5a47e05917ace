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

#ifndef MODELFORGE_DICTIONARY_HPP_
#define MODELFORGE_DICTIONARY_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modelforge/diagnostics.hpp"
#include "modelforge/linalg.hpp"

namespace modelforge {

// One joint as a motion-subspace matrix: one row per DoF, six columns in the
// order rot X, rot Y, rot Z, trans X, trans Y, trans Z.
struct JointDescriptor {
  std::string code;            // canonical uppercase axis tokens, e.g. "TXTZRY"
  std::vector<Vec6> rows;      // one-hot per row, row order = token order
  std::string custom_payload;  // opaque, emitted verbatim for custom joints

  std::size_t dof() const { return rows.size(); }
  bool operator==(const JointDescriptor&) const = default;
};

// Landmarks on a segment, coordinates as dimensionless fractions of the
// segment length.
struct PointSet {
  struct Entry {
    std::string name;
    Vec3 coords;
    bool operator==(const Entry&) const = default;
  };
  std::string name;
  std::vector<Entry> entries;

  const Entry* find(std::string_view point_name) const;
  bool operator==(const PointSet&) const = default;
};

// Named groups of (point, base-frame normal) contact constraints.
struct ConstraintSet {
  struct Row {
    std::string point_name;
    Vec3 normal;
    bool operator==(const Row&) const = default;
  };
  struct Subset {
    std::string name;
    std::vector<Row> rows;
    bool operator==(const Subset&) const = default;
  };
  std::string name;
  std::vector<Subset> subsets;

  const Subset* find(std::string_view subset_name) const;
  bool operator==(const ConstraintSet&) const = default;
};

// Constraints tying chosen DoFs between two points on two bodies.
struct LoopConstraintSet {
  struct Row {
    std::string predecessor_body, predecessor_point;
    std::string successor_body, successor_point;
    Vec6 axis{};
    bool operator==(const Row&) const = default;
  };
  std::string name;
  std::vector<Row> rows;
  bool operator==(const LoopConstraintSet&) const = default;
};

struct Dictionary {
  std::map<std::string, JointDescriptor> joints;
  std::map<std::string, PointSet> point_sets;
  std::map<std::string, ConstraintSet> constraint_sets;
  std::map<std::string, LoopConstraintSet> loop_sets;

  const JointDescriptor* find_joint(std::string_view name) const;
  const PointSet* find_point_set(std::string_view name) const;
  const ConstraintSet* find_constraint_set(std::string_view name) const;
  const LoopConstraintSet* find_loop_set(std::string_view name) const;
};

// Parses a concatenation of axis tokens from {RX,RY,RZ,TX,TY,TZ},
// case-insensitive. Returns nullopt and a MalformedJointCode diagnostic on
// empty input, odd length, or unknown tokens.
std::optional<JointDescriptor> parse_joint_code(std::string_view code, Diagnostics& diags,
                                                const std::string& file = {}, int line = 0);

// Canonical code string recovered from the rows; inverse of parse_joint_code
// for every descriptor whose rows are one-hot.
std::string serialize_joint_code(const JointDescriptor& joint);

// Built-in descriptors: the six single-DoF joints, the planar and spatial
// floating bases, hand/foot point sets and the sagittal foot constraint set.
Dictionary builtin_dictionary();

// Extension entries override base entries of the same name (one warning per
// override); otherwise the result is the union.
Dictionary merge_custom_dictionary(const Dictionary& base, const Dictionary& extension,
                                   Diagnostics& diags);

}  // namespace modelforge

#endif  // MODELFORGE_DICTIONARY_HPP_
