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

#ifndef MODELFORGE_DIAGNOSTICS_HPP_
#define MODELFORGE_DIAGNOSTICS_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace modelforge {

enum class Severity { kWarning, kError };

enum class DiagCode {
  // dictionary
  kMalformedJointCode,
  kDictionaryOverride,
  kNonUnitNormal,
  // anthropometry / scaling
  kMissingAnthropometry,
  kUnknownSegmentType,
  kMissingSegmentLength,
  kNonPositiveLength,
  kZeroUnadjustedMass,
  kBadScalingTable,
  // kinematics
  kUnknownDictionaryName,
  kCycleDetected,
  kDuplicateSegmentName,
  kDanglingParent,
  kMissingHumanContext,
  kUnknownMassPolicy,
  kUnknownMeshRef,
  kUnknownSegment,
  kNameCountMismatch,
  kUnknownMarkerType,
  kDuplicateMarkerName,
  kCapabilityViolation,
  kInvalidModel,
  // mesh
  kMalformedMesh,
  kOpenMesh,
  kMissingMesh,
  kAsymmetricUserInertia,
  kNonPositiveDimension,
  // formats
  kDuplicateKeyword,
  kMissingMandatory,
  kGappedObjectIndex,
  kUnknownKeyword,
  kWrongFieldCount,
  kEmptyName,
  kNonNumericValue,
  kNegativeLength,
  kInvalidValue,
  kUnreadableFile,
  // exporter / pipeline
  kValidationFailed,
  kNameCollision,
  kOverwriteRefused,
  kNothingToBuild,
};

std::string_view to_string(DiagCode code);
std::string_view to_string(Severity severity);

struct Diagnostic {
  Severity severity = Severity::kError;
  DiagCode code = DiagCode::kInvalidModel;
  std::string message;
  std::string file;
  int line = 0;  // 1-based physical line; 0 = not file-located

  std::string to_text() const;
};

// Ordered sink for parser and builder diagnostics.
class Diagnostics {
 public:
  void error(DiagCode code, std::string message, std::string file = {}, int line = 0);
  void warning(DiagCode code, std::string message, std::string file = {}, int line = 0);
  void add(Diagnostic d);
  void append(const Diagnostics& other);

  bool has_errors() const;
  int error_count() const;
  int warning_count() const;
  bool contains(DiagCode code) const;

  const std::vector<Diagnostic>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Diagnostic> entries_;
};

}  // namespace modelforge

#endif  // MODELFORGE_DIAGNOSTICS_HPP_
