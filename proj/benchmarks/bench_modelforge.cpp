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

#include <benchmark/benchmark.h>

#include <filesystem>
#include <string>

#include "modelforge/build.hpp"
#include "modelforge/exporter.hpp"
#include "modelforge/formats.hpp"
#include "modelforge/mesh.hpp"
#include "modelforge/pipeline.hpp"

namespace {

using namespace modelforge;

void BM_ParseJointCode(benchmark::State& state) {
  Diagnostics diags;
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_joint_code("TXTYTZRXRYRZ", diags));
  }
}
BENCHMARK(BM_ParseJointCode);

void BM_ParseDescription(benchmark::State& state) {
  std::string text = "Segment_0, Pelvis, TXTZRY, ROOT\n";
  for (int i = 1; i < state.range(0); ++i) {
    text += "Segment_" + std::to_string(i) + ", Thigh, RY, Segment_" + std::to_string(i - 1) +
            "\n";
  }
  for (auto _ : state) {
    Diagnostics diags;
    benchmark::DoNotOptimize(parse_description(text, diags));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ParseDescription)->Range(8, 2048)->Complexity(benchmark::oN);

void BM_IcosphereVolume(benchmark::State& state) {
  Diagnostics diags;
  auto mesh = make_primitive(PrimitiveKind::kSphere, {1.0}, diags, 32,
                             static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Diagnostics d;
    benchmark::DoNotOptimize(volume_properties(*mesh, d));
  }
  state.SetLabel(std::to_string(mesh->triangles.size()) + " tris");
}
BENCHMARK(BM_IcosphereVolume)->DenseRange(1, 4);

void BM_SagittalPipeline(benchmark::State& state) {
  PipelineOptions options;
  options.env_path =
      (std::filesystem::path(MODELFORGE_SAMPLES_DIR) / "sagittal_walker" / "environment.env")
          .string();
  options.data_dir = MODELFORGE_DATA_DIR;
  options.dry_run = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_create(options));
  }
}
BENCHMARK(BM_SagittalPipeline);

void BM_LuaExport(benchmark::State& state) {
  PipelineOptions options;
  options.env_path =
      (std::filesystem::path(MODELFORGE_SAMPLES_DIR) / "human3d" / "environment.env").string();
  options.data_dir = MODELFORGE_DATA_DIR;
  options.dry_run = true;
  PipelineResult result = run_create(options);
  for (auto _ : state) {
    Diagnostics diags;
    benchmark::DoNotOptimize(write_lua_model(*result.human, diags));
  }
}
BENCHMARK(BM_LuaExport);

}  // namespace

BENCHMARK_MAIN();
