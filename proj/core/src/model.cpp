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

#include "modelforge/model.hpp"

namespace modelforge {

const AttachedPoint* ModelSegment::find_point(std::string_view point_name) const {
  for (const auto& p : points) {
    if (p.name == point_name) return &p;
  }
  return nullptr;
}

int KinematicModel::total_dof() const {
  int dof = 0;
  for (const auto& s : segments) dof += static_cast<int>(s.joint.dof());
  return dof;
}

double KinematicModel::total_mass() const {
  double mass = 0;
  for (const auto& s : segments) mass += s.mass;
  return mass;
}

int KinematicModel::marker_count() const {
  int count = 0;
  for (const auto& s : segments) count += static_cast<int>(s.markers.size());
  return count;
}

const ModelSegment* KinematicModel::find_segment(std::string_view segment_name) const {
  for (const auto& s : segments) {
    if (s.name == segment_name) return &s;
  }
  return nullptr;
}

ModelSegment* KinematicModel::find_segment(std::string_view segment_name) {
  for (auto& s : segments) {
    if (s.name == segment_name) return &s;
  }
  return nullptr;
}

int marker_name_count(MarkerEntry::Type type) {
  switch (type) {
    case MarkerEntry::Type::kMarker: return 1;
    case MarkerEntry::Type::kCluster: return 3;
    case MarkerEntry::Type::kDoubleCluster: return 6;
  }
  return 1;
}

std::optional<MarkerEntry::Type> marker_type_from_string(std::string_view name) {
  if (name == "Marker") return MarkerEntry::Type::kMarker;
  if (name == "Cluster") return MarkerEntry::Type::kCluster;
  if (name == "DoubleCluster") return MarkerEntry::Type::kDoubleCluster;
  return std::nullopt;
}

std::string to_string(MarkerEntry::Type type) {
  switch (type) {
    case MarkerEntry::Type::kMarker: return "Marker";
    case MarkerEntry::Type::kCluster: return "Cluster";
    case MarkerEntry::Type::kDoubleCluster: return "DoubleCluster";
  }
  return "Marker";
}

const ObjectSetupEntry* ObjectSetup::find(std::string_view segment_type) const {
  for (const auto& e : entries) {
    if (e.segment_type == segment_type) return &e;
  }
  return nullptr;
}

}  // namespace modelforge
