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

#include "modelforge/diagnostics.hpp"

#include <algorithm>
#include <utility>

namespace modelforge {

std::string_view to_string(DiagCode code) {
  switch (code) {
    case DiagCode::kMalformedJointCode: return "MalformedJointCode";
    case DiagCode::kDictionaryOverride: return "DictionaryOverride";
    case DiagCode::kNonUnitNormal: return "NonUnitNormal";
    case DiagCode::kMissingAnthropometry: return "MissingAnthropometry";
    case DiagCode::kUnknownSegmentType: return "UnknownSegmentType";
    case DiagCode::kMissingSegmentLength: return "MissingSegmentLength";
    case DiagCode::kNonPositiveLength: return "NonPositiveLength";
    case DiagCode::kZeroUnadjustedMass: return "ZeroUnadjustedMass";
    case DiagCode::kBadScalingTable: return "BadScalingTable";
    case DiagCode::kUnknownDictionaryName: return "UnknownDictionaryName";
    case DiagCode::kCycleDetected: return "CycleDetected";
    case DiagCode::kDuplicateSegmentName: return "DuplicateSegmentName";
    case DiagCode::kDanglingParent: return "DanglingParent";
    case DiagCode::kMissingHumanContext: return "MissingHumanContext";
    case DiagCode::kUnknownMassPolicy: return "UnknownMassPolicy";
    case DiagCode::kUnknownMeshRef: return "UnknownMeshRef";
    case DiagCode::kUnknownSegment: return "UnknownSegment";
    case DiagCode::kNameCountMismatch: return "NameCountMismatch";
    case DiagCode::kUnknownMarkerType: return "UnknownMarkerType";
    case DiagCode::kDuplicateMarkerName: return "DuplicateMarkerName";
    case DiagCode::kCapabilityViolation: return "CapabilityViolation";
    case DiagCode::kInvalidModel: return "InvalidModel";
    case DiagCode::kMalformedMesh: return "MalformedMesh";
    case DiagCode::kOpenMesh: return "OpenMesh";
    case DiagCode::kMissingMesh: return "MissingMesh";
    case DiagCode::kAsymmetricUserInertia: return "AsymmetricUserInertia";
    case DiagCode::kNonPositiveDimension: return "NonPositiveDimension";
    case DiagCode::kDuplicateKeyword: return "DuplicateKeyword";
    case DiagCode::kMissingMandatory: return "MissingMandatory";
    case DiagCode::kGappedObjectIndex: return "GappedObjectIndex";
    case DiagCode::kUnknownKeyword: return "UnknownKeyword";
    case DiagCode::kWrongFieldCount: return "WrongFieldCount";
    case DiagCode::kEmptyName: return "EmptyName";
    case DiagCode::kNonNumericValue: return "NonNumericValue";
    case DiagCode::kNegativeLength: return "NegativeLength";
    case DiagCode::kInvalidValue: return "InvalidValue";
    case DiagCode::kUnreadableFile: return "UnreadableFile";
    case DiagCode::kValidationFailed: return "ValidationFailed";
    case DiagCode::kNameCollision: return "NameCollision";
    case DiagCode::kOverwriteRefused: return "OverwriteRefused";
    case DiagCode::kNothingToBuild: return "NothingToBuild";
  }
  return "Unknown";
}

std::string_view to_string(Severity severity) {
  return severity == Severity::kError ? "error" : "warning";
}

std::string Diagnostic::to_text() const {
  std::string out;
  if (!file.empty()) {
    out += file;
    if (line > 0) {
      out += ':';
      out += std::to_string(line);
    }
    out += ": ";
  }
  out += to_string(severity);
  out += ' ';
  out += to_string(code);
  out += ": ";
  out += message;
  return out;
}

void Diagnostics::error(DiagCode code, std::string message, std::string file, int line) {
  entries_.push_back({Severity::kError, code, std::move(message), std::move(file), line});
}

void Diagnostics::warning(DiagCode code, std::string message, std::string file, int line) {
  entries_.push_back({Severity::kWarning, code, std::move(message), std::move(file), line});
}

void Diagnostics::add(Diagnostic d) { entries_.push_back(std::move(d)); }

void Diagnostics::append(const Diagnostics& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

bool Diagnostics::has_errors() const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::kError; });
}

int Diagnostics::error_count() const {
  return static_cast<int>(std::count_if(
      entries_.begin(), entries_.end(),
      [](const Diagnostic& d) { return d.severity == Severity::kError; }));
}

int Diagnostics::warning_count() const {
  return static_cast<int>(entries_.size()) - error_count();
}

bool Diagnostics::contains(DiagCode code) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [code](const Diagnostic& d) { return d.code == code; });
}

}  // namespace modelforge
