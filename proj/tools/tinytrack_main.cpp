// Copyright 2026 The tinytrack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tinytrack/errors.hpp"
#include "tinytrack/io.hpp"
#include "tinytrack/pipeline.hpp"
#include "tinytrack/synth.hpp"

namespace {

namespace fs = std::filesystem;
using namespace tinytrack;

void apply_overrides(PipelineConfig& config,
                     const std::vector<std::string>& overrides) {
  for (const std::string& kv : overrides) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      throw ArgumentError("--set expects key=value, got '" + kv + "'");
    }
    config.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  config.validate();
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_hypothesis_csv(const fs::path& path,
                          const std::vector<FrameLog>& logs) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "frame,x,y,w,h,area,extent,major_axis_length,eccentricity\n";
  char buf[160];
  for (const FrameLog& log : logs) {
    for (const Hypothesis& h : log.hypotheses) {
      std::snprintf(buf, sizeof(buf), "%d,%d,%d,%d,%d,%lld,%.3f,%.3f,%.3f\n",
                    log.frame, h.blob.bbox.x, h.blob.bbox.y, h.blob.bbox.w,
                    h.blob.bbox.h, h.features.area, h.features.extent,
                    h.features.major_axis_length, h.features.eccentricity);
      out << buf;
    }
  }
}

int run_synth(const fs::path& scenario_path, const fs::path& out_dir,
              std::optional<std::uint64_t> seed_override) {
  synth::ScenarioConfig scenario =
      synth::scenario_from_json(read_text_file(scenario_path));
  if (seed_override.has_value()) scenario.seed = *seed_override;

  fs::create_directories(out_dir);
  const synth::Scenario generated = synth::generate(scenario);
  char name[32];
  for (const Frame& frame : generated.frames) {
    std::snprintf(name, sizeof(name), "%06d.pgm", frame.index);
    write_pgm(out_dir / name, frame);
  }
  write_annotations_csv(out_dir / "gt.csv", generated.annotations);
  std::cout << "wrote " << generated.frames.size() << " frames and "
            << generated.annotations.entries.size() << " annotations to "
            << out_dir.string() << "\n";
  return 0;
}

int run_detect(const fs::path& frames_dir, const fs::path& out_csv,
               const PipelineConfig& config) {
  const FrameSequence frames = load_frames(frames_dir);
  const std::vector<FrameLog> logs = run_detection(frames, config);
  write_hypothesis_csv(out_csv, logs);
  std::size_t hyp_count = 0;
  for (const FrameLog& log : logs) hyp_count += log.hypotheses.size();
  std::cout << "wrote " << hyp_count << " hypotheses over " << logs.size()
            << " frames to " << out_csv.string() << "\n";
  return 0;
}

int run_track(const fs::path& frames_dir, const fs::path& out_csv,
              const std::optional<fs::path>& hyp_log,
              const PipelineConfig& config) {
  const FrameSequence frames = load_frames(frames_dir);
  const PipelineResult result = run_pipeline(frames, config);
  write_tracks_csv(out_csv, result.records);
  if (hyp_log.has_value()) write_hypothesis_csv(*hyp_log, result.frame_logs);
  std::cout << "wrote " << result.records.size() << " track rows ("
            << result.tracks_started << " tracks) to " << out_csv.string()
            << "\n";
  return 0;
}

int run_evaluate(const fs::path& tracks_csv, const fs::path& gt_csv,
                 const fs::path& out_json, const PipelineConfig& config) {
  const BoxSeries hypotheses = records_to_boxes(read_tracks_csv(tracks_csv));
  const BoxSeries truth = annotations_to_boxes(read_annotations_csv(gt_csv));
  const EvaluationResult result = evaluate(hypotheses, truth, config.eval);
  write_metrics_json(out_json, result, config.eval);
  std::printf(
      "precision=%.4f recall=%.4f f1=%.4f jaccard=%.4f mota=%.4f motp=%.4f\n",
      result.report.precision, result.report.recall, result.report.f1,
      result.report.jaccard, result.report.mota, result.report.motp);
  std::cout << "wrote " << out_json.string() << "\n";
  return 0;
}

int run_overlay(const fs::path& frames_dir, const fs::path& tracks_csv,
                const fs::path& out_dir) {
  const FrameSequence frames = load_frames(frames_dir);
  const std::vector<TrackRecord> records = read_tracks_csv(tracks_csv);
  render_overlays(frames, records, out_dir);
  std::cout << "wrote " << frames.size() << " overlay frames to "
            << out_dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tiny moving-vehicle detection, tracking and evaluation"};
  app.require_subcommand(1);

  std::vector<std::string> overrides;
  app.add_option("--set", overrides,
                 "override a config key, e.g. --set detector.p_fa=0.05")
      ->take_all();

  std::string scenario_path, frames_dir, tracks_path, gt_path, out_path;
  std::string hyp_log_path;
  std::uint64_t seed = 0;
  bool seed_given = false;

  CLI::App* synth_cmd =
      app.add_subcommand("synth", "render a synthetic scenario to PGM + gt.csv");
  synth_cmd->add_option("scenario", scenario_path, "scenario JSON")->required();
  synth_cmd->add_option("out_dir", out_path, "output directory")->required();
  synth_cmd->add_option("--seed", seed, "override the scenario seed")
      ->each([&](const std::string&) { seed_given = true; });

  CLI::App* detect_cmd =
      app.add_subcommand("detect", "run detector + discriminator, write hypotheses CSV");
  detect_cmd->add_option("frames_dir", frames_dir, "input frame directory")->required();
  detect_cmd->add_option("-o,--output", out_path, "hypotheses CSV")->required();

  CLI::App* track_cmd =
      app.add_subcommand("track", "run the full pipeline, write tracks CSV");
  track_cmd->add_option("frames_dir", frames_dir, "input frame directory")->required();
  track_cmd->add_option("-o,--output", out_path, "tracks CSV")->required();
  track_cmd->add_option("--hyp-log", hyp_log_path, "also write the hypothesis log");

  CLI::App* eval_cmd =
      app.add_subcommand("evaluate", "score tracks against ground truth");
  eval_cmd->add_option("tracks", tracks_path, "tracks CSV")->required();
  eval_cmd->add_option("ground_truth", gt_path, "annotation CSV")->required();
  eval_cmd->add_option("-o,--output", out_path, "metrics JSON")
      ->default_val("metrics.json");

  CLI::App* overlay_cmd =
      app.add_subcommand("overlay", "burn tracks into RGB PNG frames");
  overlay_cmd->add_option("frames_dir", frames_dir, "input frame directory")->required();
  overlay_cmd->add_option("tracks", tracks_path, "tracks CSV")->required();
  overlay_cmd->add_option("out_dir", out_path, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    PipelineConfig config;
    apply_overrides(config, overrides);
    if (synth_cmd->parsed()) {
      return run_synth(scenario_path, out_path,
                       seed_given ? std::optional<std::uint64_t>(seed)
                                  : std::nullopt);
    }
    if (detect_cmd->parsed()) return run_detect(frames_dir, out_path, config);
    if (track_cmd->parsed()) {
      return run_track(frames_dir, out_path,
                       hyp_log_path.empty()
                           ? std::nullopt
                           : std::optional<fs::path>(hyp_log_path),
                       config);
    }
    if (eval_cmd->parsed()) {
      return run_evaluate(tracks_path, gt_path, out_path, config);
    }
    if (overlay_cmd->parsed()) {
      return run_overlay(frames_dir, tracks_path, out_path);
    }
  } catch (const Error& e) {
    std::cerr << "error:" << e.category() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error:internal: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
