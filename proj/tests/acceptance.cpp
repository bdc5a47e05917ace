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

// Acceptance suite: every criterion below runs at desk scale and prints one
// pass/fail line. The process exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lua_table_reader.hpp"
#include "modelforge/build.hpp"
#include "modelforge/exporter.hpp"
#include "modelforge/formats.hpp"
#include "modelforge/pipeline.hpp"

using namespace modelforge;
namespace fs = std::filesystem;

namespace {

class Check {
 public:
  void require(bool condition, const std::string& what) {
    if (!condition) failures_.push_back(what);
  }
  template <typename T, typename U>
  void equal(const T& actual, const U& expected, const std::string& what) {
    if (!(actual == expected)) {
      std::ostringstream oss;
      oss << what << " (got " << actual << ", expected " << expected << ")";
      failures_.push_back(oss.str());
    }
  }
  void near(double actual, double expected, double tolerance, const std::string& what) {
    if (!(std::fabs(actual - expected) <= tolerance)) {
      std::ostringstream oss;
      oss << what << " (got " << actual << ", expected " << expected << " +/- " << tolerance
          << ")";
      failures_.push_back(oss.str());
    }
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

std::string slurp(const fs::path& path, Check& check) {
  std::ifstream stream(path, std::ios::binary);
  check.require(stream.good(), "readable file: " + path.string());
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

fs::path copy_sample(const std::string& sample, const std::string& label) {
  fs::path src = fs::path(MODELFORGE_SAMPLES_DIR) / sample;
  fs::path dst = fs::current_path() / ("acceptance_" + label);
  fs::remove_all(dst);
  fs::create_directories(dst);
  fs::copy(src, dst, fs::copy_options::recursive);
  return dst;
}

// Independent DoF oracle: counts two-letter tokens per description line
// without going through parse_joint_code.
int hand_counted_dof(const std::string& description_text) {
  Diagnostics diags;
  ModelDescription d = parse_description(description_text, diags);
  int dof = 0;
  for (const auto& line : d.lines) dof += static_cast<int>(line.joint_code.size() / 2);
  return dof;
}

// ---------------------------------------------------------------------------

void criterion_joint_algebra(Check& check) {
  Diagnostics diags;
  auto planar = parse_joint_code("TXTZRY", diags);
  check.require(planar.has_value(), "TXTZRY parses");
  if (planar) {
    std::vector<Vec6> expected = {
        {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 1}, {0, 1, 0, 0, 0, 0}};
    check.require(planar->rows == expected, "TXTZRY reproduces the planar base matrix exactly");
  }

  const char* codes[6] = {"RX", "RY", "RZ", "TX", "TY", "TZ"};
  for (int i = 0; i < 6; ++i) {
    auto joint = parse_joint_code(codes[i], diags);
    check.require(joint.has_value(), std::string("single-axis code parses: ") + codes[i]);
    if (joint) {
      Vec6 row{};
      row[i] = 1.0;
      check.require(joint->rows.size() == 1 && joint->rows[0] == row,
                    std::string("one-hot row for ") + codes[i]);
    }
  }

  Dictionary dict = builtin_dictionary();
  for (const auto& [name, joint] : dict.joints) {
    auto reparsed = parse_joint_code(serialize_joint_code(joint), diags);
    check.require(reparsed && *reparsed == joint, "serialize/parse round trip for " + name);
  }
  check.require(!diags.has_errors(), "no diagnostics while exercising built-ins");
}

void criterion_dictionary_fidelity(Check& check) {
  Dictionary dict = builtin_dictionary();
  const PointSet* hand = dict.find_point_set("Points_Hand_R_3D");
  check.require(hand != nullptr, "Points_Hand_R_3D exists");
  if (hand) {
    check.require(hand->entries.size() == 4, "hand point set has 4 entries");
    struct Expected {
      const char* name;
      Vec3 coords;
    } expected[4] = {
        {"ProximalMetacarpal_Medial_R", {-0.2, 0.15, -0.2}},
        {"ProximalMetacarpal_Lateral_R", {0.2, 0.15, -0.2}},
        {"DistalMetacarpal_Medial_R", {-0.2, 0.15, -0.6}},
        {"DistalMetacarpal_Lateral_R", {0.2, 0.15, -0.6}},
    };
    for (const auto& e : expected) {
      const PointSet::Entry* entry = hand->find(e.name);
      check.require(entry != nullptr && entry->coords == e.coords,
                    std::string("hand point coordinate-for-coordinate: ") + e.name);
    }
  }

  const ConstraintSet* foot = dict.find_constraint_set("ConstraintSet_Foot_Sagittal");
  check.require(foot != nullptr, "ConstraintSet_Foot_Sagittal exists");
  if (foot) {
    const ConstraintSet::Subset* flat = foot->find("FootFlat_Sagittal");
    const ConstraintSet::Subset* heel = foot->find("HeelFixed_Sagittal");
    const ConstraintSet::Subset* toe = foot->find("ToeFixed_Sagittal");
    check.require(flat && flat->rows.size() == 3, "FootFlat_Sagittal has 3 rows");
    check.require(heel && heel->rows.size() == 2, "HeelFixed_Sagittal has 2 rows");
    check.require(toe && toe->rows.size() == 2, "ToeFixed_Sagittal has 2 rows");
    if (flat && heel && toe) {
      check.require(flat->rows[0].point_name == "Heel_Sagittal" &&
                        flat->rows[0].normal == Vec3{1, 0, 0} &&
                        flat->rows[1].point_name == "Heel_Sagittal" &&
                        flat->rows[1].normal == Vec3{0, 0, 1} &&
                        flat->rows[2].point_name == "Toe_Sagittal" &&
                        flat->rows[2].normal == Vec3{0, 0, 1},
                    "FootFlat_Sagittal rows carry the exact normals");
      check.require(heel->rows[0].normal == Vec3{1, 0, 0} && heel->rows[1].normal == Vec3{0, 0, 1},
                    "HeelFixed_Sagittal normals");
      check.require(toe->rows[0].normal == Vec3{1, 0, 0} && toe->rows[1].normal == Vec3{0, 0, 1},
                    "ToeFixed_Sagittal normals");
    }
  }
}

std::vector<SegmentDefaults> synthetic_defaults(const std::vector<double>& masses,
                                                const std::vector<double>& lengths) {
  std::vector<SegmentDefaults> out;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    SegmentDefaults d;
    d.segment_type = "S" + std::to_string(i);
    d.mass = masses[i];
    d.length = lengths[i];
    d.com_fraction = 0.45;
    d.rgyr = {0.3, 0.28, 0.12};
    d.com = {0, 0, -d.com_fraction * d.length};
    auto gyr = [&](double fraction) {
      double r = fraction * d.length;
      return d.mass * r * r;
    };
    d.inertia = Mat3::diagonal(gyr(d.rgyr.x), gyr(d.rgyr.y), gyr(d.rgyr.z));
    out.push_back(d);
  }
  return out;
}

void criterion_custom_scaling(Check& check) {
  // frozen oracle case
  Diagnostics diags;
  auto scaled =
      apply_custom_lengths(synthetic_defaults({10, 20}, {1, 1}), {{"S0", 2.0}, {"S1", 1.0}}, 30,
                           diags);
  check.require(!diags.has_errors(), "two-segment case scales without errors");
  check.require(scaled.size() == 2 && scaled[0].mass == 15.0 && scaled[1].mass == 15.0,
                "two-segment case returns mcustom = (15, 15)");

  // independent brute force of the same definition
  {
    double unadjusted = 10.0 * (2.0 / 1.0) + 20.0 * (1.0 / 1.0);
    double m0 = 10.0 * 2.0 * (30.0 / unadjusted);
    double m1 = 20.0 * 1.0 * (30.0 / unadjusted);
    check.require(m0 == scaled[0].mass && m1 == scaled[1].mass,
                  "independent brute-force script agrees");
  }

  // 1000 random instances: mass conservation to 1e-12 relative
  std::mt19937 rng(987654321);
  std::uniform_real_distribution<double> mass_dist(0.05, 30.0);
  std::uniform_real_distribution<double> len_dist(0.05, 2.5);
  std::uniform_int_distribution<int> n_dist(1, 15);
  bool conserved = true;
  for (int i = 0; i < 1000 && conserved; ++i) {
    int n = n_dist(rng);
    std::vector<double> masses, lengths;
    std::map<std::string, double> lcustom;
    double total = 0;
    for (int k = 0; k < n; ++k) {
      masses.push_back(mass_dist(rng));
      lengths.push_back(len_dist(rng));
      lcustom["S" + std::to_string(k)] = len_dist(rng);
      total += masses.back();
    }
    Diagnostics d2;
    auto result = apply_custom_lengths(synthetic_defaults(masses, lengths), lcustom, total, d2);
    double sum = 0;
    for (const auto& s : result) sum += s.mass;
    conserved = !d2.has_errors() && std::fabs(sum - total) <= 1e-12 * total;
  }
  check.require(conserved, "sum(mcustom) = M within 1e-12 relative over 1000 random instances");

  // identity case bit-exact
  auto defaults = synthetic_defaults({7.25, 11.5, 3.75}, {0.5, 1.25, 0.75});
  Diagnostics d3;
  auto identity = apply_custom_lengths(defaults, {{"S0", 0.5}, {"S1", 1.25}, {"S2", 0.75}},
                                       7.25 + 11.5 + 3.75, d3);
  bool bit_exact = identity.size() == defaults.size();
  for (std::size_t i = 0; bit_exact && i < defaults.size(); ++i) {
    bit_exact = identity[i].mass == defaults[i].mass && identity[i].length == defaults[i].length &&
                identity[i].com == defaults[i].com && identity[i].inertia == defaults[i].inertia;
  }
  check.require(bit_exact, "identity case returns the defaults bit-exactly");

  // scale equivariance under a common factor k
  std::map<std::string, double> lcustom = {{"S0", 0.8}, {"S1", 1.6}, {"S2", 0.4}};
  Diagnostics d4;
  auto base = apply_custom_lengths(defaults, lcustom, 22.5, d4);
  for (double k : {0.25, 3.0, 11.0}) {
    std::map<std::string, double> scaled_lengths;
    for (const auto& [type, value] : lcustom) scaled_lengths[type] = k * value;
    auto other = apply_custom_lengths(defaults, scaled_lengths, 22.5, d4);
    for (std::size_t i = 0; i < base.size(); ++i) {
      check.require(std::fabs(other[i].mass - base[i].mass) <= 1e-12 * base[i].mass,
                    "scale equivariance under common factor");
    }
  }
}

void criterion_table_sanity(Check& check) {
  for (const char* name :
       {"deleva_3seg_torso", "deleva_fused_torso", "deleva_sagittal"}) {
    Diagnostics diags;
    std::string text =
        slurp(fs::path(MODELFORGE_DATA_DIR) / "scaling" / (std::string(name) + ".csv"), check);
    ScalingTable table = parse_scaling_table(text, diags, name);
    check.require(!diags.has_errors(), std::string("bundled table parses: ") + name);
    for (Gender gender : {Gender::kMale, Gender::kFemale}) {
      double sum = 0;
      for (const auto& [type, per_gender] : table.regression) {
        (void)type;
        auto it = per_gender.find(gender);
        if (it != per_gender.end()) sum += it->second.mass_fraction;
      }
      check.near(sum, 1.0, 0.005, std::string("mass fractions sum to 1: ") + name);
    }
  }

  // scaled total mass: +/- 0.5% before custom scaling, 1e-12 relative after
  Diagnostics diags;
  std::string text =
      slurp(fs::path(MODELFORGE_DATA_DIR) / "scaling" / "deleva_sagittal.csv", check);
  ScalingTable table = parse_scaling_table(text, diags, "deleva_sagittal");
  AnthropometryProfile profile;
  profile.gender = Gender::kFemale;
  profile.height = 1.69;
  profile.weight = 61.0;
  auto defaults = scale_segments_regression(table, profile, diags);
  double before = 0;
  for (const auto& d : defaults) before += d.mass;
  check.require(std::fabs(before - 61.0) <= 0.005 * 61.0,
                "scaled model mass equals the profile weight within 0.5%");

  auto adjusted = apply_custom_lengths(defaults, {{"Thigh", 0.5}, {"Shank", 0.47}}, 61.0, diags);
  double after = 0;
  for (const auto& d : adjusted) after += d.mass;
  check.require(std::fabs(after - 61.0) <= 1e-12 * 61.0,
                "custom-scaled mass equals the profile weight within 1e-12");
  check.require(!diags.has_errors(), "table sanity path is error free");
}

void criterion_mesh_oracle(Check& check) {
  // unit cube [0,1]^3
  Diagnostics diags;
  auto cube = make_primitive(PrimitiveKind::kCuboid, {1, 1, 1}, diags);
  check.require(cube.has_value(), "unit cube primitive");
  for (Vec3& v : cube->vertices) v += Vec3{0.5, 0.5, 0.5};
  auto props = volume_properties(*cube, diags);
  check.require(props.has_value(), "unit cube integrates");
  if (props) {
    check.near(props->volume, 1.0, 1e-9, "unit cube volume");
    check.near(props->centroid.x, 0.5, 1e-9, "unit cube centroid x");
    check.near(props->centroid.y, 0.5, 1e-9, "unit cube centroid y");
    check.near(props->centroid.z, 0.5, 1e-9, "unit cube centroid z");
    for (int i = 0; i < 3; ++i) {
      check.near(props->unit_density_inertia(i, i), 1.0 / 6.0, 1e-9,
                 "unit cube inertia diagonal");
    }
  }

  auto sphere = make_primitive(PrimitiveKind::kSphere, {1.0}, diags, 32, 4);
  auto sphere_props = volume_properties(*sphere, diags);
  double analytic = 4.0 / 3.0 * 3.14159265358979323846;
  check.require(sphere_props.has_value(), "icosphere integrates");
  if (sphere_props) {
    check.require(std::fabs(sphere_props->volume - analytic) <= 0.01 * analytic,
                  "icosphere(4) volume within 1% of 4*pi/3");
  }

  TriMesh reversed = *cube;
  for (auto& t : reversed.triangles) std::swap(t[1], t[2]);
  Diagnostics d2;
  check.require(!volume_properties(reversed, d2).has_value() &&
                    d2.contains(DiagCode::kOpenMesh),
                "winding-reversal detection fires");

  // 200 random transforms: translation covariance and uniform-scale laws
  std::mt19937 rng(2468);
  std::uniform_real_distribution<double> offset_dist(-15.0, 15.0);
  std::uniform_real_distribution<double> scale_dist(0.3, 3.0);
  Diagnostics d3;
  auto base = make_primitive(PrimitiveKind::kCuboid, {0.8, 1.7, 0.4}, d3);
  auto base_props = volume_properties(*base, d3);
  bool covariant = base_props.has_value();
  for (int i = 0; i < 200 && covariant; ++i) {
    Vec3 t{offset_dist(rng), offset_dist(rng), offset_dist(rng)};
    double s = scale_dist(rng);

    TriMesh moved = *base;
    for (Vec3& v : moved.vertices) v += t;
    Diagnostics d4;
    auto moved_props = volume_properties(moved, d4);
    covariant = moved_props.has_value() &&
                std::fabs(moved_props->volume - base_props->volume) <= 1e-9 &&
                (moved_props->centroid - (base_props->centroid + t)).norm() <= 1e-9 * (1 + t.norm());
    for (int k = 0; covariant && k < 9; ++k) {
      covariant = std::fabs(moved_props->unit_density_inertia.m[k] -
                            base_props->unit_density_inertia.m[k]) <= 1e-7;
    }

    TriMesh scaled = scale_mesh(*base, {s, s, s});
    Diagnostics d5;
    auto scaled_props = volume_properties(scaled, d5);
    double s3 = s * s * s, s5 = s3 * s * s;
    covariant = covariant && scaled_props.has_value() &&
                std::fabs(scaled_props->volume - base_props->volume * s3) <=
                    1e-9 * base_props->volume * s3;
    for (int k = 0; covariant && k < 9; ++k) {
      covariant = std::fabs(scaled_props->unit_density_inertia.m[k] -
                            base_props->unit_density_inertia.m[k] * s5) <=
                  1e-7 * std::max(1.0, std::fabs(base_props->unit_density_inertia.m[k] * s5));
    }
  }
  check.require(covariant, "translation/scale covariance over 200 random transforms");
}

void criterion_grammar_coverage(Check& check) {
  // every sample input file parses cleanly through its format parser
  int parsed_files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(MODELFORGE_SAMPLES_DIR)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    Diagnostics diags;
    std::string text = slurp(entry.path(), check);
    if (name == "environment.env") {
      parse_environment(text, diags, name);
    } else if (name == "anthropometry.txt") {
      parse_anthropometry(text, diags, name);
    } else if (name == "human.txt" || name.find("description") != std::string::npos) {
      parse_description(text, diags, name);
    } else if (name == "lengths.txt") {
      parse_segment_lengths(text, diags, name);
    } else if (name == "markers.txt") {
      parse_marker_file(text, diags, name);
    } else if (name.find("mass") != std::string::npos) {
      parse_mass_properties(text, diags, name);
    } else if (name.find("setup") != std::string::npos) {
      parse_object_setup(text, diags, name);
    } else if (name == "custom_dictionary.txt") {
      parse_dictionary_extension(text, diags, name);
    } else if (name == "dictionary_manifest.txt") {
      parse_manifest(text, diags, name);
    } else {
      continue;
    }
    ++parsed_files;
    check.require(!diags.has_errors(), "sample parses cleanly: " + entry.path().string());
  }
  for (const char* table : {"deleva_3seg_torso.csv", "deleva_fused_torso.csv",
                            "deleva_sagittal.csv", "jensen_child.csv"}) {
    Diagnostics diags;
    parse_scaling_table(slurp(fs::path(MODELFORGE_DATA_DIR) / "scaling" / table, check), diags,
                        table);
    ++parsed_files;
    check.require(!diags.has_errors(), std::string("bundled table parses: ") + table);
  }
  {
    Diagnostics diags;
    parse_default_markerset(
        slurp(fs::path(MODELFORGE_DATA_DIR) / "markersets" / "default_markerset.csv", check),
        diags, "default_markerset.csv");
    ++parsed_files;
    check.require(!diags.has_errors(), "bundled markerset parses");
  }
  check.require(parsed_files >= 20, "sample corpus covers the grammars");

  // injected single-field faults cite the correct physical line
  {
    Diagnostics diags;
    parse_description("Segment_A, TypeA, RY, ROOT\n% comment\nSegment_B, TypeB, RY\n", diags,
                      "inject.txt");
    check.require(diags.has_errors() && diags.entries()[0].line == 3 &&
                      diags.entries()[0].code == DiagCode::kWrongFieldCount,
                  "description fault cites line 3");
  }
  {
    Diagnostics diags;
    parse_anthropometry("gender, male\nheight, tall\n", diags, "inject.txt");
    check.require(diags.has_errors() && diags.entries()[0].line == 2,
                  "anthropometry fault cites line 2");
  }
  {
    Diagnostics diags;
    parse_segment_lengths("0.4, Segment_A\nx, Segment_B\n", diags, "inject.txt");
    check.require(diags.has_errors() && diags.entries()[0].line == 2,
                  "lengths fault cites line 2");
  }
  {
    Diagnostics diags;
    parse_marker_file("Segment_A, Cluster, 0.04\nM1, M2, , , , , 0,0,0,0,0,0\n", diags,
                      "inject.txt");
    check.require(diags.has_errors() && diags.entries()[0].line == 2,
                  "marker fault cites line 2");
  }
  {
    Diagnostics diags;
    parse_mass_properties("Box, UseMeanDensity, 700\nBox2, UseMagic, 1\n", diags, "inject.txt");
    check.require(diags.has_errors() && diags.entries()[0].line == 2,
                  "mass-properties fault cites line 2");
  }
  {
    Diagnostics diags;
    parse_environment("OutputFolder, a\nOutputFolder, b\n", diags, "inject.txt");
    check.require(diags.has_errors() && diags.entries()[0].line == 2,
                  "environment fault cites line 2");
  }

  // parse(serialize(x)) == x across the six input formats
  Diagnostics diags;
  Environment env;
  HumanEnv h;
  h.anthropometry_path = "a.txt";
  h.description_path = "d.txt";
  h.scaling_algorithm = "deleva_sagittal";
  h.add_markers = true;
  env.human = h;
  env.objects.push_back({1, "od.txt", "os.txt", "om.txt", "obj"});
  env.output_folder = "out";
  check.require(parse_environment(serialize_environment(env), diags) == env,
                "environment round trip");

  ModelDescription description = parse_description(
      "Segment_Pelvis, Pelvis, TXTZRY, ROOT\n"
      "Segment_Foot, Foot, RY, Segment_Pelvis, Points_Foot_Sagittal, ConstraintSet_Foot_Sagittal\n",
      diags);
  check.require(parse_description(serialize_description(description), diags) == description,
                "description round trip");

  AnthropometryProfile profile;
  profile.gender = Gender::kMale;
  profile.age = 31;
  profile.height = 1.79;
  profile.weight = 73.5;
  profile.foot_length = 0.27;
  check.require(parse_anthropometry(serialize_anthropometry(profile), diags) == profile,
                "anthropometry round trip");

  std::map<std::string, double> lengths = {{"Segment_Thigh", 0.462}, {"Segment_Shank", 0.441}};
  check.require(parse_segment_lengths(serialize_segment_lengths(lengths), diags) == lengths,
                "segment lengths round trip");

  MarkerSpec markers = parse_marker_file(
      "Segment_Pelvis, Cluster, 0.043\n"
      "Pelvis_1, Pelvis_2, Pelvis_3, , , , -1.0, -0.05, 0.90, 0, 20, 0\n",
      diags);
  check.require(parse_marker_file(serialize_marker_file(markers), diags) == markers,
                "marker file round trip");

  MassPolicyMap policies = parse_mass_properties(
      "Box, UseMeanDensity, 700\n"
      "Frame, UseUserValues, 5, 0, 0.1, 0, 1, 0, 0, 0, 2, 0, 0, 0, 3\n",
      diags);
  check.require(parse_mass_properties(serialize_mass_properties(policies), diags) == policies,
                "mass properties round trip");
  check.require(!diags.has_errors(), "round trips are error free");
}

void criterion_export_determinism(Check& check) {
  fs::path dir = copy_sample("sagittal_walker", "determinism");
  PipelineOptions options;
  options.env_path = (dir / "environment.env").string();
  options.data_dir = MODELFORGE_DATA_DIR;
  options.format = OutputFormat::kAll;

  PipelineResult first = run_create(options);
  check.require(first.ok(), "first create succeeds");
  std::map<std::string, std::string> bytes;
  for (const auto& file : first.written_files) bytes[file] = slurp(file, check);
  check.require(bytes.size() == 10, "lua + json + scene files for 3 models, plus combined lua");

  options.force = true;
  PipelineResult second = run_create(options);
  check.require(second.ok(), "second create succeeds");
  for (const auto& file : second.written_files) {
    check.require(slurp(file, check) == bytes.at(file),
                  "byte-identical across consecutive creates: " + file);
  }

  // re-parse the human Lua with the test-side reader
  if (first.human) {
    std::string lua = slurp(dir / "out" / "human_sagittal.lua", check);
    auto doc = luareader::parse(lua);
    const auto& frames = doc.at("frames");
    check.equal(frames.items.size(), first.human->segments.size(), "frame count recovered");

    int dof = 0;
    double mass = 0;
    int constraint_rows = 0;
    for (const auto& frame : frames.items) {
      dof += static_cast<int>(frame.at("joint").items.size());
      mass += frame.at("body").at("mass").number;
    }
    if (const luareader::Value* sets = doc.find("constraint_sets")) {
      for (const auto& [name, rows] : sets->fields) {
        (void)name;
        constraint_rows += static_cast<int>(rows.items.size());
      }
    }
    int expected_dof = hand_counted_dof(slurp(dir / "human.txt", check));
    check.equal(dof, expected_dof, "total DoF equals the hand-counted joint-code sum");
    check.near(mass, first.human->total_mass(), 1e-12, "masses recovered exactly");
    check.equal(constraint_rows, 7, "constraint rows recovered (3+2+2)");
  }

  // combined export of human + 2 objects with a forced name collision
  {
    KinematicModel clash;
    clash.kind = ModelKind::kObject;
    clash.name = "object2";
    ModelSegment s;
    s.name = "Segment_Pelvis";  // collides with the human pelvis
    s.segment_type = "Box";
    s.parent_name = "ROOT";
    s.parent_id = 0;
    Diagnostics d0;
    s.joint = *parse_joint_code("TXTZRY", d0);
    s.mass = 1;
    s.inertia = Mat3::diagonal(0.1, 0.1, 0.1);
    clash.segments.push_back(s);

    Diagnostics diags;
    std::string lua =
        write_combined(&*first.human, {&first.objects[0], &clash}, {}, diags);
    check.require(!lua.empty(), "combined export succeeds");
    check.require(diags.contains(DiagCode::kNameCollision), "collision warning emitted");
    auto doc = luareader::parse(lua);
    const auto& frames = doc.at("frames");
    std::size_t expected =
        first.human->segments.size() + first.objects[0].segments.size() + 1;
    check.equal(frames.items.size(), expected, "combined contains all frames");
    bool renamed = false;
    for (const auto& frame : frames.items) {
      renamed = renamed || frame.at("name").str == "Object2_Segment_Pelvis";
    }
    check.require(renamed, "colliding object frame renamed Object2_Segment_Pelvis");
  }
}

void criterion_capability_matrix(Check& check) {
  KinematicModel human;
  human.kind = ModelKind::kHuman;
  KinematicModel object;
  object.kind = ModelKind::kObject;

  struct Case {
    const char* functionality;
    ModelInputsSummary inputs;
    bool on_object;
  } cases[6] = {
      {"Anthropometry", {.anthropometry = true}, true},
      {"Scaling algorithms", {.scaling_algorithm = true}, true},
      {"Custom scaling", {.custom_lengths = true}, true},
      {"Custom setups", {.custom_setup = true}, false},
      {"Segment mass from mesh", {.mass_from_mesh = true}, false},
      {"Segment mass from user", {.mass_from_user = true}, false},
  };
  for (const Case& c : cases) {
    Diagnostics report = validate_model(c.on_object ? object : human, c.inputs);
    bool named = false;
    for (const auto& d : report.entries()) {
      named = named || (d.code == DiagCode::kCapabilityViolation &&
                        d.message.find(c.functionality) != std::string::npos);
    }
    check.require(report.has_errors() && named,
                  std::string("violation rejected and named: ") + c.functionality);
    Diagnostics allowed = validate_model(c.on_object ? human : object, c.inputs);
    check.require(!allowed.has_errors(),
                  std::string("permitted side accepted: ") + c.functionality);
  }
}

void criterion_end_to_end(Check& check) {
  fs::path dir = copy_sample("sagittal_walker", "endtoend");
  PipelineOptions options;
  options.env_path = (dir / "environment.env").string();
  options.data_dir = MODELFORGE_DATA_DIR;
  options.format = OutputFormat::kAll;

  auto start = std::chrono::steady_clock::now();
  PipelineResult result = run_create(options);
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  check.require(result.ok(), "sample creates, validates and exports");
  check.require(elapsed < 2.0, "pipeline finishes in under 2 seconds");
  check.require(result.written_files.size() == 10, "all requested outputs written");

  if (result.human && result.objects.size() == 2) {
    const KinematicModel& human = *result.human;
    const KinematicModel& exo = result.objects[1];
    check.require(exo.find_segment("Segment_ExoTrunk")->length ==
                      human.find_segment("Segment_Trunk")->length,
                  "exo trunk length equals the human trunk length bit-exactly");
    check.require(exo.find_segment("Segment_ExoThigh")->length ==
                      human.find_segment("Segment_Thigh")->length,
                  "exo thigh length equals the human thigh length bit-exactly");
    check.require(exo.find_segment("Segment_ExoShank")->length ==
                      human.find_segment("Segment_Shank")->length,
                  "exo shank length equals the human shank length bit-exactly");
  } else {
    check.require(false, "expected a human and two objects");
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Check&)> run;
  };
  std::vector<Criterion> criteria = {
      {1, "joint algebra", criterion_joint_algebra},
      {2, "dictionary fidelity", criterion_dictionary_fidelity},
      {3, "custom scaling oracle", criterion_custom_scaling},
      {4, "scaling-table sanity", criterion_table_sanity},
      {5, "mesh inertia oracle", criterion_mesh_oracle},
      {6, "grammar coverage", criterion_grammar_coverage},
      {7, "export determinism and validity", criterion_export_determinism},
      {8, "capability matrix", criterion_capability_matrix},
      {9, "end-to-end pipeline", criterion_end_to_end},
  };

  int failed = 0;
  for (const auto& criterion : criteria) {
    Check check;
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    bool ok = check.failures().empty();
    std::printf("criterion %d (%s): %s\n", criterion.id, criterion.title, ok ? "PASS" : "FAIL");
    for (const auto& failure : check.failures()) {
      std::printf("    - %s\n", failure.c_str());
    }
    if (!ok) ++failed;
  }
  if (failed > 0) {
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
