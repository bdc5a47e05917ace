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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "modelforge/exporter.hpp"
#include "modelforge/formats.hpp"
#include "modelforge/pipeline.hpp"

#ifndef MODELFORGE_DEFAULT_DATA_DIR
#define MODELFORGE_DEFAULT_DATA_DIR "data"
#endif

namespace {

using namespace modelforge;

// display-only rounding; exports keep full precision
std::string display(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

struct CommonArgs {
  std::string env_path;
  std::string data_dir = MODELFORGE_DEFAULT_DATA_DIR;
  std::string dict_manifest;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("env,--env", args.env_path, "environment file")->required();
  cmd->add_option("--data-dir", args.data_dir, "bundled data directory");
  cmd->add_option("--dict", args.dict_manifest,
                  "manifest listing custom dictionary extension files");
  cmd->add_flag("--quiet", args.quiet, "suppress warnings and the summary");
}

int fill_dictionary_files(const CommonArgs& args, PipelineOptions& options) {
  if (args.dict_manifest.empty()) return 0;
  std::ifstream stream(args.dict_manifest, std::ios::binary);
  if (!stream) {
    std::cerr << "error: cannot read dictionary manifest '" << args.dict_manifest << "'\n";
    return 1;
  }
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  Diagnostics diags;
  namespace fs = std::filesystem;
  fs::path manifest_dir = fs::path(args.dict_manifest).parent_path();
  for (const std::string& entry : parse_manifest(buffer.str(), diags, args.dict_manifest)) {
    fs::path p{entry};
    options.dictionary_files.push_back(
        p.is_absolute() ? p.string() : (manifest_dir / p).string());
  }
  return 0;
}

void print_diagnostics(const Diagnostics& diags, bool quiet) {
  for (const auto& d : diags.entries()) {
    if (quiet && d.severity == Severity::kWarning) continue;
    std::cerr << d.to_text() << "\n";
  }
}

void print_summary(const PipelineResult& result, bool dry_run) {
  auto describe = [](const KinematicModel& model) {
    std::cout << "  " << model.name << ": " << model.segments.size() << " segments, "
              << model.total_dof() << " DoF, " << display(model.total_mass()) << " kg, "
              << model.marker_count() << " markers\n";
  };
  std::cout << "models:\n";
  if (result.human) describe(*result.human);
  for (const auto& object : result.objects) describe(object);
  if (dry_run) {
    std::cout << "dry run: no files written\n";
  } else if (result.written_files.empty()) {
    std::cout << "no outputs requested (no *_Save keywords)\n";
  } else {
    std::cout << "outputs:\n";
    for (const auto& f : result.written_files) std::cout << "  " << f << "\n";
  }
}

int run_pipeline(const CommonArgs& args, PipelineOptions options, bool print) {
  options.env_path = args.env_path;
  options.data_dir = args.data_dir;
  if (int rc = fill_dictionary_files(args, options); rc != 0) return rc;

  PipelineResult result = run_create(options);
  print_diagnostics(result.diagnostics, args.quiet);
  if (!result.ok()) return 1;
  if (print && !args.quiet) print_summary(result, options.dry_run);
  return 0;
}

int cmd_inspect(const CommonArgs& args, bool show_tree, bool show_dof, bool show_masses,
                const std::string& segment_name, bool as_json) {
  namespace fs = std::filesystem;
  std::vector<const KinematicModel*> models;
  PipelineResult result;

  if (fs::path(args.env_path).extension() == ".json") {
    // exported JSON mirrors can be inspected directly
    std::ifstream stream(args.env_path, std::ios::binary);
    if (!stream) {
      std::cerr << "error: cannot read '" << args.env_path << "'\n";
      return 1;
    }
    nlohmann::json doc = nlohmann::json::parse(stream, nullptr, false);
    if (doc.is_discarded() || !doc.contains("frames")) {
      std::cerr << "error: '" << args.env_path << "' is not an exported model\n";
      return 1;
    }
    KinematicModel model;
    model.name = fs::path(args.env_path).stem().string();
    for (const auto& frame : doc["frames"]) {
      ModelSegment s;
      s.name = frame["name"].get<std::string>();
      s.parent_name = frame["parent"].get<std::string>();
      s.mass = frame["body"]["mass"].get<double>();
      for (const auto& row : frame["joint"]) {
        Vec6 r{};
        for (int i = 0; i < 6; ++i) r[i] = row[i].get<double>();
        s.joint.rows.push_back(r);
      }
      s.joint.code = serialize_joint_code(s.joint);
      if (frame.contains("markers")) {
        for (auto it = frame["markers"].begin(); it != frame["markers"].end(); ++it) {
          s.markers.push_back({it.key(), {}});
        }
      }
      model.segments.push_back(std::move(s));
    }
    result.human = std::move(model);
    models.push_back(&*result.human);
  } else {
    PipelineOptions options;
    options.env_path = args.env_path;
    options.data_dir = args.data_dir;
    options.dry_run = true;
    if (int rc = fill_dictionary_files(args, options); rc != 0) return rc;
    result = run_create(options);
    print_diagnostics(result.diagnostics, args.quiet);
    if (!result.ok()) return 1;
    if (result.human) models.push_back(&*result.human);
    for (const auto& object : result.objects) models.push_back(&object);
  }

  if (!segment_name.empty()) {
    for (const KinematicModel* model : models) {
      if (const ModelSegment* s = model->find_segment(segment_name)) {
        if (as_json) {
          nlohmann::ordered_json j;
          j["name"] = s->name;
          j["parent"] = s->parent_name;
          j["joint"] = s->joint.code;
          j["dof"] = s->joint.dof();
          j["mass"] = s->mass;
          j["length"] = s->length;
          j["com"] = {s->com.x, s->com.y, s->com.z};
          j["points"] = nlohmann::ordered_json::array();
          for (const auto& p : s->points) j["points"].push_back(p.name);
          j["markers"] = nlohmann::ordered_json::array();
          for (const auto& m : s->markers) j["markers"].push_back(m.name);
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << s->name << " (type " << s->segment_type << ")\n"
                    << "  parent: " << s->parent_name << "\n"
                    << "  joint: " << s->joint.code << " (" << s->joint.dof() << " DoF)\n"
                    << "  length: " << display(s->length) << " m\n"
                    << "  mass: " << display(s->mass) << " kg\n"
                    << "  points: " << s->points.size() << ", markers: " << s->markers.size()
                    << "\n";
        }
        return 0;
      }
    }
    std::cerr << "error: segment '" << segment_name << "' not found\n";
    return 1;
  }

  for (const KinematicModel* model : models) {
    std::cout << model->name << ":\n";
    if (show_tree || (!show_dof && !show_masses)) {
      for (const auto& s : model->segments) {
        std::cout << "  " << s.name << " <- " << s.parent_name << " [" << s.joint.code << "]\n";
      }
    }
    if (show_dof) {
      int total = 0;
      for (const auto& s : model->segments) {
        std::cout << "  " << s.name << ": " << s.joint.dof() << "\n";
        total += static_cast<int>(s.joint.dof());
      }
      std::cout << "  total DoF: " << total << "\n";
    }
    if (show_masses) {
      double total = 0;
      for (const auto& s : model->segments) {
        std::cout << "  " << s.name << ": " << display(s.mass) << " kg\n";
        total += s.mass;
      }
      std::cout << "  total mass: " << display(total) << " kg\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modelforge - subject-specific rigid multibody model generation"};
  app.require_subcommand(1);

  CommonArgs create_args;
  PipelineOptions create_options;
  std::string format = "lua";
  CLI::App* create = app.add_subcommand("create", "build models and write the exports");
  add_common(create, create_args);
  create->add_flag("--dry-run", create_options.dry_run, "validate only, write nothing");
  create->add_flag("--force", create_options.force, "overwrite existing outputs");
  create->add_option("--format", format, "lua|json|all")
      ->check(CLI::IsMember({"lua", "json", "all"}));

  CommonArgs validate_args;
  CLI::App* validate = app.add_subcommand("validate", "run the pipeline without writing");
  add_common(validate, validate_args);

  CommonArgs inspect_args;
  bool show_tree = false, show_dof = false, show_masses = false, as_json = false;
  std::string segment_name;
  CLI::App* inspect = app.add_subcommand("inspect", "print model structure");
  add_common(inspect, inspect_args);
  inspect->add_flag("--tree", show_tree, "print the segment tree");
  inspect->add_flag("--dof", show_dof, "print the DoF table");
  inspect->add_flag("--masses", show_masses, "print the mass table");
  inspect->add_option("--segment", segment_name, "print one segment record");
  inspect->add_flag("--json", as_json, "JSON output for --segment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  if (create->parsed()) {
    if (format == "json") create_options.format = OutputFormat::kJson;
    if (format == "all") create_options.format = OutputFormat::kAll;
    return run_pipeline(create_args, create_options, true);
  }
  if (validate->parsed()) {
    PipelineOptions options;
    options.dry_run = true;
    return run_pipeline(validate_args, options, false);
  }
  if (inspect->parsed()) {
    return cmd_inspect(inspect_args, show_tree, show_dof, show_masses, segment_name, as_json);
  }
  return 2;
}
