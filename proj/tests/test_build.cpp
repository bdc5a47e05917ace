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

#include <doctest.h>

#include <cmath>

#include "modelforge/build.hpp"
#include "modelforge/formats.hpp"

using namespace modelforge;

namespace {

std::vector<SegmentDefaults> defaults_for(
    std::initializer_list<std::pair<const char*, double>> types_and_lengths) {
  std::vector<SegmentDefaults> out;
  for (const auto& [type, length] : types_and_lengths) {
    SegmentDefaults d;
    d.segment_type = type;
    d.length = length;
    d.mass = 1.0;
    d.com_fraction = 0.5;
    d.com = {0, 0, -0.5 * length};
    d.rgyr = {0.3, 0.3, 0.1};
    d.inertia = Mat3::diagonal(0.09 * length * length, 0.09 * length * length,
                               0.01 * length * length);
    out.push_back(d);
  }
  return out;
}

ModelDescription describe(const std::string& text) {
  Diagnostics diags;
  ModelDescription d = parse_description(text, diags);
  REQUIRE_FALSE(diags.has_errors());
  return d;
}

KinematicModel build_simple_human(const std::string& description_text,
                                  std::vector<SegmentDefaults> defaults) {
  Diagnostics diags;
  auto model = build_human_model(describe(description_text), builtin_dictionary(), defaults, {},
                                 AnthropometryProfile{}, diags);
  REQUIRE(model);
  REQUIRE_FALSE(diags.has_errors());
  return *model;
}

}  // namespace

TEST_CASE("human build: pelvis root line gives a 3-DoF planar base") {
  KinematicModel model = build_simple_human("Segment_Pelvis, Pelvis, TXTZRY, ROOT\n",
                                            defaults_for({{"Pelvis", 0.15}}));
  REQUIRE(model.segments.size() == 1);
  const ModelSegment& pelvis = model.segments[0];
  CHECK(pelvis.parent_id == 0);
  CHECK(pelvis.parent_name == "ROOT");
  CHECK(pelvis.joint.dof() == 3);
  CHECK(pelvis.joint_r == Vec3{0, 0, 0});
  CHECK(model.total_dof() == 3);
}

TEST_CASE("human build: children attach at the parent's distal end") {
  KinematicModel model = build_simple_human(
      "Segment_Pelvis, Pelvis, TXTZRY, ROOT\n"
      "Segment_Thigh, Thigh, RY, Segment_Pelvis\n"
      "Segment_Shank, Shank, RY, Segment_Thigh\n",
      defaults_for({{"Pelvis", 0.15}, {"Thigh", 0.45}, {"Shank", 0.42}}));
  REQUIRE(model.segments.size() == 3);
  CHECK(model.segments[1].joint_r == Vec3{0, 0, -0.15});
  CHECK(model.segments[2].joint_r == Vec3{0, 0, -0.45});
  CHECK(model.segments[1].parent_id == 1);
  CHECK(model.segments[2].parent_id == 2);
}

TEST_CASE("human build: hip children sit at the pelvis origin plus offsets") {
  Diagnostics diags;
  AnthropometryProfile profile;
  profile.hip_center_distance = 0.18;
  auto offsets = compute_joint_offsets(profile, {"Pelvis", "Thigh_R", "Thigh_L"}, diags);
  auto model = build_human_model(
      describe("Segment_Pelvis, Pelvis, TXTZRY, ROOT\n"
               "Segment_Thigh_R, Thigh_R, RY, Segment_Pelvis\n"
               "Segment_Thigh_L, Thigh_L, RY, Segment_Pelvis\n"),
      builtin_dictionary(), defaults_for({{"Pelvis", 0.15}, {"Thigh_R", 0.45}, {"Thigh_L", 0.45}}),
      offsets, profile, diags);
  REQUIRE(model);
  CHECK(model->segments[1].joint_r == Vec3{0, -0.09, 0});
  CHECK(model->segments[2].joint_r == Vec3{0, 0.09, 0});
}

TEST_CASE("human build: dictionary points scale with segment length") {
  KinematicModel model = build_simple_human(
      "Segment_Hand_R, Hand_R, RXRZ, ROOT, Points_Hand_R_3D\n", defaults_for({{"Hand_R", 1.0}}));
  const ModelSegment& hand = model.segments[0];
  REQUIRE(hand.points.size() == 4);
  // L = 1: attached point equals the dictionary fraction exactly
  CHECK(hand.find_point("ProximalMetacarpal_Medial_R")->position == Vec3{-0.2, 0.15, -0.2});

  KinematicModel half = build_simple_human("Segment_Hand_R, Hand_R, RXRZ, ROOT, Points_Hand_R_3D\n",
                                           defaults_for({{"Hand_R", 0.5}}));
  CHECK(half.segments[0].find_point("ProximalMetacarpal_Medial_R")->position ==
        Vec3{-0.1, 0.075, -0.1});
}

TEST_CASE("human build: foot anthropometry overrides the nominal fractions") {
  Diagnostics diags;
  AnthropometryProfile profile;
  profile.heel_ankle_offset = 0.07;
  profile.ankle_height = 0.08;
  profile.foot_length = 0.26;
  auto model = build_human_model(
      describe("Segment_Foot, Foot, RY, ROOT, Points_Foot_Sagittal\n"), builtin_dictionary(),
      defaults_for({{"Foot", 0.26}}), {}, profile, diags);
  REQUIRE(model);
  CHECK(model->segments[0].find_point("Heel_Sagittal")->position == Vec3{-0.07, 0, -0.08});
  CHECK(model->segments[0].find_point("Toe_Sagittal")->position == Vec3{0.19, 0, -0.08});
}

TEST_CASE("human build: constraint subsets resolve against attached points") {
  KinematicModel model = build_simple_human(
      "Segment_Foot, Foot, RY, ROOT, Points_Foot_Sagittal, ConstraintSet_Foot_Sagittal\n",
      defaults_for({{"Foot", 0.26}}));
  const ModelSegment& foot = model.segments[0];
  CHECK(foot.constraints.size() == 7);  // 3 + 2 + 2 rows
  for (const auto& c : foot.constraints) {
    CHECK(foot.find_point(c.point_name) != nullptr);
  }
}

TEST_CASE("human build: constraint set without its points is an error") {
  Diagnostics diags;
  auto model = build_human_model(
      describe("Segment_Box, Box, RY, ROOT, , ConstraintSet_Foot_Sagittal\n"),
      builtin_dictionary(), defaults_for({{"Box", 0.3}}), {}, AnthropometryProfile{}, diags);
  CHECK_FALSE(model);
  CHECK(diags.contains(DiagCode::kUnknownDictionaryName));
}

TEST_CASE("human build: error paths") {
  auto defaults = defaults_for({{"Pelvis", 0.15}, {"Thigh", 0.45}});
  SUBCASE("unknown dictionary point set") {
    Diagnostics diags;
    CHECK_FALSE(build_human_model(describe("Segment_A, Pelvis, RY, ROOT, Points_Nope\n"),
                                  builtin_dictionary(), defaults, {}, {}, diags));
    CHECK(diags.contains(DiagCode::kUnknownDictionaryName));
  }
  SUBCASE("unknown segment type") {
    Diagnostics diags;
    CHECK_FALSE(build_human_model(describe("Segment_A, Wing, RY, ROOT\n"), builtin_dictionary(),
                                  defaults, {}, {}, diags));
    CHECK(diags.contains(DiagCode::kUnknownSegmentType));
  }
  SUBCASE("duplicate segment name") {
    Diagnostics diags;
    CHECK_FALSE(build_human_model(
        describe("Segment_A, Pelvis, RY, ROOT\nSegment_A, Thigh, RY, Segment_A\n"),
        builtin_dictionary(), defaults, {}, {}, diags));
    CHECK(diags.contains(DiagCode::kDuplicateSegmentName));
  }
  SUBCASE("dangling parent") {
    Diagnostics diags;
    CHECK_FALSE(build_human_model(describe("Segment_A, Pelvis, RY, Segment_Nope\n"),
                                  builtin_dictionary(), defaults, {}, {}, diags));
    CHECK(diags.contains(DiagCode::kDanglingParent));
  }
  SUBCASE("self parent is a cycle") {
    Diagnostics diags;
    CHECK_FALSE(build_human_model(describe("Segment_A, Pelvis, RY, Segment_A\n"),
                                  builtin_dictionary(), defaults, {}, {}, diags));
    CHECK(diags.contains(DiagCode::kCycleDetected));
  }
  SUBCASE("parent after child breaks topological order") {
    Diagnostics diags;
    CHECK_FALSE(build_human_model(
        describe("Segment_A, Pelvis, RY, Segment_B\nSegment_B, Thigh, RY, ROOT\n"),
        builtin_dictionary(), defaults, {}, {}, diags));
    CHECK(diags.contains(DiagCode::kCycleDetected));
  }
  SUBCASE("malformed joint code") {
    Diagnostics diags;
    CHECK_FALSE(build_human_model(describe("Segment_A, Pelvis, RQ, ROOT\n"), builtin_dictionary(),
                                  defaults, {}, {}, diags));
    CHECK(diags.contains(DiagCode::kMalformedJointCode));
  }
}

TEST_CASE("human build: named dictionary joints resolve") {
  KinematicModel model = build_simple_human("Segment_Pelvis, Pelvis, Joint_Root2D_TXTZRY, ROOT\n",
                                            defaults_for({{"Pelvis", 0.15}}));
  CHECK(model.segments[0].joint.code == "TXTZRY");
  CHECK(model.segments[0].joint.dof() == 3);
}

TEST_CASE("human build: DoF accounting matches hand counts") {
  KinematicModel model = build_simple_human(
      "Segment_Pelvis, Pelvis, TXTZRY, ROOT\n"
      "Segment_Trunk, Trunk, RY, Segment_Pelvis\n"
      "Segment_Thigh, Thigh, RY, Segment_Pelvis\n"
      "Segment_Shank, Shank, RY, Segment_Thigh\n"
      "Segment_Foot, Foot, RXRY, Segment_Shank\n",
      defaults_for({{"Pelvis", 0.15}, {"Trunk", 0.5}, {"Thigh", 0.45}, {"Shank", 0.42},
                    {"Foot", 0.26}}));
  CHECK(model.total_dof() == 3 + 1 + 1 + 1 + 2);
}

TEST_CASE("human build: determinism") {
  auto build = [] {
    return build_simple_human(
        "Segment_Pelvis, Pelvis, TXTZRY, ROOT\n"
        "Segment_Thigh, Thigh, RY, Segment_Pelvis\n",
        defaults_for({{"Pelvis", 0.15}, {"Thigh", 0.45}}));
  };
  KinematicModel a = build();
  KinematicModel b = build();
  REQUIRE(a.segments.size() == b.segments.size());
  for (std::size_t i = 0; i < a.segments.size(); ++i) {
    CHECK(a.segments[i].name == b.segments[i].name);
    CHECK(a.segments[i].parent_id == b.segments[i].parent_id);
    CHECK(a.segments[i].mass == b.segments[i].mass);
    CHECK(a.segments[i].joint_r == b.segments[i].joint_r);
    CHECK(a.segments[i].inertia == b.segments[i].inertia);
  }
}

TEST_CASE("object build: literal and scale_to lengths") {
  KinematicModel human = build_simple_human(
      "Segment_Pelvis, Pelvis, TXTZRY, ROOT\n"
      "Segment_Thigh_R, Thigh_R, RY, Segment_Pelvis\n",
      defaults_for({{"Pelvis", 0.15}, {"Thigh_R", 0.422}}));

  Diagnostics diags;
  ObjectSetup setup = parse_object_setup(
      "ExoThigh, scale_to, Segment_Thigh_R\n"
      "ExoThigh, mass, 1.2, 0, 0, -0.2, 0.02, 0, 0, 0, 0.02, 0, 0, 0, 0.004\n"
      "Box, length, 0.3\n"
      "Box, mesh, cuboid, 0.4, 0.3, 0.3\n",
      diags);

  SUBCASE("scale_to copies the human segment length bit-exactly") {
    auto object = build_object_model(describe("Segment_ExoThigh, ExoThigh, RY, ROOT\n"),
                                     builtin_dictionary(), setup, {}, &human, ".", diags);
    REQUIRE(object);
    CHECK(object->segments[0].length == human.segments[1].length);
    CHECK(object->kind == ModelKind::kObject);
  }
  SUBCASE("scale_to without a human context") {
    Diagnostics d2;
    CHECK_FALSE(build_object_model(describe("Segment_ExoThigh, ExoThigh, RY, ROOT\n"),
                                   builtin_dictionary(), setup, {}, nullptr, ".", d2));
    CHECK(d2.contains(DiagCode::kMissingHumanContext));
  }
  SUBCASE("user values pass through unchanged") {
    Diagnostics d2;
    MassPolicyMap policies = parse_mass_properties(
        "Segment_Box, UseUserValues, 5, 0, 0, 0, 1, 0, 0, 0, 2, 0, 0, 0, 3\n", d2);
    auto object = build_object_model(describe("Segment_Box, Box, TXTZRY, ROOT\n"),
                                     builtin_dictionary(), setup, policies, nullptr, ".", d2);
    REQUIRE(object);
    CHECK(object->segments[0].mass == 5.0);
    CHECK(object->segments[0].inertia == Mat3::diagonal(1, 2, 3));
  }
  SUBCASE("mean density over the setup mesh") {
    Diagnostics d2;
    MassPolicyMap policies = parse_mass_properties("Segment_Box, UseMeanDensity, 1000\n", d2);
    auto object = build_object_model(describe("Segment_Box, Box, TXTZRY, ROOT\n"),
                                     builtin_dictionary(), setup, policies, nullptr, ".", d2);
    REQUIRE(object);
    // 0.4 * 0.3 * 0.3 cuboid at density 1000
    CHECK(object->segments[0].mass == doctest::Approx(36.0).epsilon(1e-9));
  }
  SUBCASE("zero density gives zero mass") {
    Diagnostics d2;
    MassPolicyMap policies = parse_mass_properties("Segment_Box, UseMeanDensity, 0\n", d2);
    auto object = build_object_model(describe("Segment_Box, Box, TXTZRY, ROOT\n"),
                                     builtin_dictionary(), setup, policies, nullptr, ".", d2);
    REQUIRE(object);
    CHECK(object->segments[0].mass == 0.0);
    CHECK(object->segments[0].inertia.max_abs() == 0.0);
  }
  SUBCASE("mean density without a mesh") {
    Diagnostics d2;
    MassPolicyMap policies = parse_mass_properties("Segment_Exo, UseMeanDensity, 500\n", d2);
    ObjectSetup no_mesh = parse_object_setup("Exo, length, 0.4\n", d2);
    CHECK_FALSE(build_object_model(describe("Segment_Exo, Exo, RY, ROOT\n"), builtin_dictionary(),
                                   no_mesh, policies, nullptr, ".", d2));
    CHECK(d2.contains(DiagCode::kMissingMesh));
  }
  SUBCASE("unknown setup type") {
    Diagnostics d2;
    CHECK_FALSE(build_object_model(describe("Segment_Y, Mystery, RY, ROOT\n"),
                                   builtin_dictionary(), setup, {}, nullptr, ".", d2));
    CHECK(d2.contains(DiagCode::kUnknownSegmentType));
  }
}

TEST_CASE("markers: single marker at the segment origin") {
  KinematicModel model =
      build_simple_human("Segment_A, Pelvis, RY, ROOT\n", defaults_for({{"Pelvis", 0.4}}));
  MarkerSpec spec;
  spec.entries.push_back({"Segment_A", MarkerEntry::Type::kMarker, 0, {"M1"}, {0, 0, 0}, {0, 0, 0}});
  Diagnostics diags;
  model = place_markers(std::move(model), spec, diags);
  CHECK(diags.empty());
  REQUIRE(model.segments[0].markers.size() == 1);
  CHECK(model.segments[0].markers[0].position == Vec3{0, 0, 0});
}

TEST_CASE("markers: cluster layout at identity rotation") {
  KinematicModel model =
      build_simple_human("Segment_A, Pelvis, RY, ROOT\n", defaults_for({{"Pelvis", 1.0}}));
  MarkerSpec spec;
  spec.entries.push_back(
      {"Segment_A", MarkerEntry::Type::kCluster, 0.043, {"C1", "C2", "C3"}, {0, 0, 0}, {0, 0, 0}});
  Diagnostics diags;
  model = place_markers(std::move(model), spec, diags);
  REQUIRE(model.segments[0].markers.size() == 3);
  CHECK(model.segments[0].markers[0].position == Vec3{0, 0, 0});
  CHECK(model.segments[0].markers[1].position == Vec3{0.043, 0, 0});
  CHECK(model.segments[0].markers[2].position == Vec3{0, 0, 0.043});
}

TEST_CASE("markers: translation is a fraction of segment length") {
  KinematicModel model =
      build_simple_human("Segment_A, Pelvis, RY, ROOT\n", defaults_for({{"Pelvis", 0.5}}));
  MarkerSpec spec;
  spec.entries.push_back(
      {"Segment_A", MarkerEntry::Type::kMarker, 0, {"M1"}, {-1.0, -0.05, 0.9}, {0, 0, 0}});
  Diagnostics diags;
  model = place_markers(std::move(model), spec, diags);
  const Vec3& p = model.segments[0].markers[0].position;
  CHECK(p.x == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(p.y == doctest::Approx(-0.025).epsilon(1e-12));
  CHECK(p.z == doctest::Approx(0.45).epsilon(1e-12));
}

TEST_CASE("markers: double cluster offsets along rotated local y") {
  KinematicModel model =
      build_simple_human("Segment_A, Pelvis, RY, ROOT\n", defaults_for({{"Pelvis", 1.0}}));
  MarkerSpec spec;
  spec.entries.push_back({"Segment_A",
                          MarkerEntry::Type::kDoubleCluster,
                          0.05,
                          {"D1", "D2", "D3", "D4", "D5", "D6"},
                          {0, 0, 0},
                          {0, 0, 90}});
  Diagnostics diags;
  model = place_markers(std::move(model), spec, diags);
  REQUIRE(model.segments[0].markers.size() == 6);
  // rotation Z by 90 deg maps local +y to world -x
  const Vec3& d4 = model.segments[0].markers[3].position;
  CHECK(d4.x == doctest::Approx(-0.05).epsilon(1e-12));
  CHECK(std::fabs(d4.y) < 1e-12);
}

TEST_CASE("markers: unknown segment and duplicate names") {
  KinematicModel model =
      build_simple_human("Segment_A, Pelvis, RY, ROOT\n", defaults_for({{"Pelvis", 1.0}}));
  MarkerSpec spec;
  spec.entries.push_back({"Segment_Zzz", MarkerEntry::Type::kMarker, 0, {"M"}, {0, 0, 0}, {0, 0, 0}});
  Diagnostics diags;
  model = place_markers(std::move(model), spec, diags);
  CHECK(diags.contains(DiagCode::kUnknownSegment));

  MarkerSpec dup;
  dup.entries.push_back({"Segment_A", MarkerEntry::Type::kMarker, 0, {"M"}, {0, 0, 0}, {0, 0, 0}});
  dup.entries.push_back({"Segment_A", MarkerEntry::Type::kMarker, 0, {"M"}, {0.1, 0, 0}, {0, 0, 0}});
  Diagnostics diags2;
  model = place_markers(std::move(model), dup, diags2);
  CHECK(diags2.contains(DiagCode::kDuplicateMarkerName));
}

TEST_CASE("default markerset: attach by type, skip missing, reject reapplication") {
  std::vector<DefaultMarkerRow> rows = {
      {"RTHI", "Thigh_R", {0.15, -0.1, -0.5}},
      {"LTHI", "Thigh_L", {0.15, 0.1, -0.5}},
  };
  KinematicModel model = build_simple_human(
      "Segment_Pelvis, Pelvis, TXTZRY, ROOT\n"
      "Segment_Thigh_R, Thigh_R, RY, Segment_Pelvis\n",
      defaults_for({{"Pelvis", 0.15}, {"Thigh_R", 0.4}}));

  Diagnostics diags;
  model = add_default_markerset(std::move(model), rows, diags);
  CHECK_FALSE(diags.has_errors());
  CHECK(diags.warning_count() == 1);  // LTHI skipped
  CHECK(model.marker_count() == 1);
  CHECK(model.segments[1].markers[0].name == "RTHI");
  // fraction times length
  CHECK(model.segments[1].markers[0].position.z == doctest::Approx(-0.2).epsilon(1e-12));

  Diagnostics diags2;
  model = add_default_markerset(std::move(model), rows, diags2);
  CHECK(diags2.contains(DiagCode::kDuplicateMarkerName));
}

TEST_CASE("reference pose frames compose ancestor transforms") {
  KinematicModel model;
  model.kind = ModelKind::kObject;

  ModelSegment a;
  a.name = "A";
  a.parent_name = "ROOT";
  a.parent_id = 0;
  a.joint_r = {0, 0, 1};
  model.segments.push_back(a);

  ModelSegment b;
  b.name = "B";
  b.parent_name = "A";
  b.parent_id = 1;
  b.joint_r = {0, 0, 0.5};
  model.segments.push_back(b);

  auto poses = reference_pose_frames(model);
  CHECK(poses.at("ROOT").translation == Vec3{0, 0, 0});
  CHECK(poses.at("ROOT").rotation == Mat3::identity());
  CHECK(poses.at("A").translation == Vec3{0, 0, 1});
  CHECK(poses.at("B").translation == Vec3{0, 0, 1.5});
}

TEST_CASE("capability matrix: all six violations are named") {
  KinematicModel human;
  human.kind = ModelKind::kHuman;
  KinematicModel object;
  object.kind = ModelKind::kObject;

  struct Case {
    const char* functionality;
    ModelInputsSummary inputs;
    bool on_object;
  };
  std::vector<Case> cases = {
      {"Anthropometry", {.anthropometry = true}, true},
      {"Scaling algorithms", {.scaling_algorithm = true}, true},
      {"Custom scaling", {.custom_lengths = true}, true},
      {"Custom setups", {.custom_setup = true}, false},
      {"Segment mass from mesh", {.mass_from_mesh = true}, false},
      {"Segment mass from user", {.mass_from_user = true}, false},
  };
  for (const Case& c : cases) {
    CAPTURE(c.functionality);
    Diagnostics report = validate_model(c.on_object ? object : human, c.inputs);
    REQUIRE(report.has_errors());
    CHECK(report.contains(DiagCode::kCapabilityViolation));
    CHECK(report.entries()[0].message.find(c.functionality) != std::string::npos);

    // the same inputs on the permitted model kind are accepted
    Diagnostics ok = validate_model(c.on_object ? human : object, c.inputs);
    CHECK_FALSE(ok.has_errors());
  }
}

TEST_CASE("validation: structural invariants") {
  KinematicModel model = build_simple_human(
      "Segment_Pelvis, Pelvis, TXTZRY, ROOT\n"
      "Segment_Thigh, Thigh, RY, Segment_Pelvis\n",
      defaults_for({{"Pelvis", 0.15}, {"Thigh", 0.45}}));

  SUBCASE("well-formed human validates cleanly") {
    Diagnostics report = validate_model(model);
    CHECK(report.empty());
  }
  SUBCASE("negative mass") {
    model.segments[0].mass = -1;
    CHECK(validate_model(model).has_errors());
  }
  SUBCASE("asymmetric inertia") {
    model.segments[0].inertia(0, 1) = 0.7;
    CHECK(validate_model(model).has_errors());
  }
  SUBCASE("indefinite inertia") {
    model.segments[0].inertia = Mat3::diagonal(-1, 1, 1);
    CHECK(validate_model(model).has_errors());
  }
  SUBCASE("topological order") {
    model.segments[0].parent_id = 2;
    CHECK(validate_model(model).has_errors());
  }
  SUBCASE("non one-hot joint row") {
    model.segments[0].joint.rows[0] = {0.5, 0.5, 0, 0, 0, 0};
    CHECK(validate_model(model).has_errors());
  }
  SUBCASE("point names are unique across the whole model") {
    model.segments[0].points.push_back({"Shared", {0, 0, 0}});
    model.segments[1].points.push_back({"Shared", {0, 0, -0.1}});
    CHECK(validate_model(model).has_errors());
  }
  SUBCASE("loop constraint must reference existing bodies and points") {
    LoopConstraintSet loop;
    loop.name = "LoopSet_X";
    loop.rows.push_back({"Segment_Pelvis", "P", "Segment_Nope", "Q", {0, 0, 0, 1, 0, 0}});
    model.loop_constraints.push_back(loop);
    Diagnostics report = validate_model(model);
    CHECK(report.contains(DiagCode::kUnknownSegment));
  }
}
