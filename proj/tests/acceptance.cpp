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

// End-to-end acceptance checks. Each case prints one PASS/FAIL line so the
// suite reads as a checklist in the ctest log.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <vector>

#include "tinytrack/detector.hpp"
#include "tinytrack/discriminator.hpp"
#include "tinytrack/evaluator.hpp"
#include "tinytrack/hungarian.hpp"
#include "tinytrack/io.hpp"
#include "tinytrack/kalman.hpp"
#include "tinytrack/pipeline.hpp"
#include "tinytrack/rng.hpp"
#include "tinytrack/synth.hpp"

using namespace tinytrack;

namespace {

void report(int criterion, const char* name, bool ok) {
  std::printf("criterion %2d [%s] %s\n", criterion, ok ? "PASS" : "FAIL", name);
  std::fflush(stdout);
  CHECK_MESSAGE(ok, "criterion ", criterion, ": ", name);
}

double seconds_since(
    const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// The criterion-7 scenario: 512x512, 120 frames, 15 movers of 2x4..3x8 px
// at 1-3 px/frame, intensity >= 40, sub-pixel drift, exponential noise.
synth::ScenarioConfig benchmark_scenario() {
  synth::ScenarioConfig config;
  config.width = 512;
  config.height = 512;
  config.num_frames = 120;
  config.noise_lambda = 0.25;
  config.drift = Point2d{0.15, 0.05};
  config.seed = 20260801;

  struct LineSpec {
    int w, h;
    double intensity;
    double x, y, vx, vy;
  };
  const LineSpec lines[] = {
      {4, 2, 55, 40, 60, 2.4, 0.0},    {5, 2, 48, 470, 100, -2.2, 0.3},
      {2, 5, 62, 80, 470, 0.5, -2.5},  {3, 6, 45, 200, 40, 1.0, 1.8},
      {6, 3, 52, 460, 430, -1.8, -1.2},{2, 4, 70, 40, 240, 2.8, 0.4},
      {8, 3, 44, 250, 480, 0.8, -2.6}, {3, 8, 58, 480, 260, -2.0, -0.8},
      {5, 3, 49, 120, 120, 1.5, 1.5},  {2, 6, 65, 350, 60, -0.3, 2.2},
      {6, 2, 42, 60, 150, 2.2, 1.0},   {3, 5, 68, 430, 470, -1.2, -2.4},
  };
  for (const LineSpec& s : lines) {
    synth::VehicleSpec v;
    v.width = s.w;
    v.height = s.h;
    v.intensity = s.intensity;
    v.path = synth::PathKind::kLine;
    v.start = Point2d{s.x, s.y};
    v.velocity = Point2d{s.vx, s.vy};
    v.start_frame = 10;
    v.end_frame = 109;
    config.vehicles.push_back(v);
  }

  struct ArcSpec {
    int w, h;
    double intensity;
    double cx, cy, radius, rate;
    bool roundabout;
  };
  const ArcSpec arcs[] = {
      {4, 2, 55, 150, 350, 60, 0.030, false},
      {2, 4, 60, 380, 380, 45, -0.040, true},
      {5, 2, 50, 256, 150, 70, 0.025, true},
  };
  for (const ArcSpec& s : arcs) {
    synth::VehicleSpec v;
    v.width = s.w;
    v.height = s.h;
    v.intensity = s.intensity;
    v.path = s.roundabout ? synth::PathKind::kRoundabout : synth::PathKind::kArc;
    v.start = Point2d{s.cx, s.cy};
    v.radius = s.radius;
    v.angular_rate = s.rate;
    v.start_frame = 10;
    v.end_frame = 109;
    config.vehicles.push_back(v);
  }
  return config;
}

struct BenchmarkRun {
  std::string tracks_csv;
  std::string metrics_json;
  MetricsReport report;
};

BenchmarkRun run_benchmark() {
  const synth::Scenario scenario = synth::generate(benchmark_scenario());
  PipelineConfig config;
  const PipelineResult result = run_pipeline(scenario.frames, config);
  const EvaluationResult eval_result =
      evaluate(records_to_boxes(result.records),
               annotations_to_boxes(scenario.annotations), config.eval);
  BenchmarkRun run;
  run.tracks_csv = tracks_csv_text(result.records);
  run.metrics_json = metrics_json_text(eval_result, config.eval);
  run.report = eval_result.report;
  return run;
}

}  // namespace

TEST_CASE("criterion 1: false-alarm calibration of the adaptive binarization") {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::mt19937_64 rng(101);
  // 200 tiles of 30x30 per p_fa, one wide image of continuous Exp(1) values.
  const int tiles = 200;
  const TileGrid grid = tile_grid(30 * tiles, 30, 30);
  for (const double p_fa : {0.01, 0.05, 0.1}) {
    DifferenceImage diff;
    diff.width = 30 * tiles;
    diff.height = 30;
    diff.values.resize(static_cast<std::size_t>(diff.width) * diff.height);
    for (auto& v : diff.values) {
      v = static_cast<float>(std::min(exponential_draw(rng, 1.0), 255.0));
    }
    const double fraction =
        static_cast<double>(binarize(diff, grid, p_fa).count()) /
        static_cast<double>(diff.values.size());
    const double band = 3.0 * std::sqrt(p_fa * (1.0 - p_fa) / 900.0);
    if (std::abs(fraction - p_fa) > band) ok = false;
  }
  const double elapsed = seconds_since(start);
  ok = ok && elapsed < 5.0;
  report(1, "binarize set-bit fraction within 3-sigma of p_fa (<5s)", ok);
}

TEST_CASE("criterion 2: binarization threshold closed form on a grid") {
  bool ok = true;
  for (int i = 0; i < 10; ++i) {
    const double lambda = 0.05 * std::pow(10.0, 0.3 * i);  // 0.05 .. ~50
    for (int j = 0; j < 10; ++j) {
      const double p_fa = 0.001 + 0.09 * j;  // 0.001 .. 0.811
      const double got = binarization_threshold(lambda, p_fa);
      const double expected = -std::log(p_fa) / lambda;
      if (std::abs(got - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
        ok = false;
      }
    }
  }
  report(2, "threshold == -ln(p_fa)/lambda to 1e-9 relative on 100 points", ok);
}

TEST_CASE("criterion 3: hungarian equals the exhaustive-permutation minimum") {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(303);
  bool ok = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const int rows = uniform_int(rng, 1, 6);
    const int cols = uniform_int(rng, 1, 6);
    Eigen::MatrixXd cost(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) cost(i, j) = uniform_range(rng, 0.0, 1.0);
    }
    const double solved = hungarian(cost).total_cost;

    // Brute force over injective assignments of the smaller side.
    const bool transpose = rows > cols;
    const int n = transpose ? cols : rows;
    const int m = transpose ? rows : cols;
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      double total = 0.0;
      for (int i = 0; i < n; ++i) {
        total += transpose ? cost(perm[i], i) : cost(i, perm[i]);
      }
      best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (std::abs(solved - best) > 1e-9) ok = false;
  }
  const double elapsed = seconds_since(start);
  ok = ok && elapsed < 10.0;
  report(3, "1000 random matrices up to 6x6 match brute force (<10s)", ok);
}

TEST_CASE("criterion 4: Kalman filtering beats raw measurements by 30%") {
  std::mt19937_64 rng(404);
  const double meas_sigma = 2.0;
  const TrackerConfig defaults;

  Vector6d truth;
  truth << 20.0, 35.0, 1.4, -0.9, 0.015, 0.01;
  const Matrix6d f = transition_matrix(1.0);

  // Initialize from the first two measurements like the tracker does.
  const Point2d m0{truth(0) + normal_draw(rng, 0.0, meas_sigma),
                   truth(1) + normal_draw(rng, 0.0, meas_sigma)};
  truth = f * truth;
  const Point2d m1{truth(0) + normal_draw(rng, 0.0, meas_sigma),
                   truth(1) + normal_draw(rng, 0.0, meas_sigma)};
  FilterState filter;
  filter.mean << m1.x, m1.y, m1.x - m0.x, m1.y - m0.y, 0.0, 0.0;
  Vector6d p0;
  p0 << defaults.measurement_noise_scale, defaults.measurement_noise_scale,
      2.0 * defaults.measurement_noise_scale,
      2.0 * defaults.measurement_noise_scale, 1.0, 1.0;
  filter.covariance = p0.asDiagonal();

  double raw_sq = 0.0, filt_sq = 0.0;
  const int steps = 200;
  for (int k = 0; k < steps; ++k) {
    truth = f * truth;
    const Point2d meas{truth(0) + normal_draw(rng, 0.0, meas_sigma),
                       truth(1) + normal_draw(rng, 0.0, meas_sigma)};
    filter = kf_predict(filter, defaults.tau, defaults.process_noise_scale);
    filter = kf_update(filter, meas, defaults.measurement_noise_scale);
    raw_sq += (meas.x - truth(0)) * (meas.x - truth(0)) +
              (meas.y - truth(1)) * (meas.y - truth(1));
    filt_sq += (filter.mean(0) - truth(0)) * (filter.mean(0) - truth(0)) +
               (filter.mean(1) - truth(1)) * (filter.mean(1) - truth(1));
  }
  const double raw_rms = std::sqrt(raw_sq / steps);
  const double filt_rms = std::sqrt(filt_sq / steps);
  const bool ok = filt_rms <= 0.7 * raw_rms;
  std::printf("  (filtered RMS %.3f px vs raw %.3f px)\n", filt_rms, raw_rms);
  report(4, "filtered RMS <= 0.7x measurement RMS over 200 steps", ok);
}

TEST_CASE("criterion 5: evaluator self-identity on interpolated ground truth") {
  std::mt19937_64 rng(505);
  AnnotationSet set;
  set.keyframe_stride = 10;
  for (int id = 0; id < 8; ++id) {
    int x = uniform_int(rng, 20, 400);
    int y = uniform_int(rng, 20, 400);
    const int w = uniform_int(rng, 2, 8);
    const int h = uniform_int(rng, 2, 6);
    for (int key = 0; key <= 10; ++key) {
      set.entries.push_back({10 * key, id, Rect{x, y, w, h}});
      x += uniform_int(rng, -15, 25);
      y += uniform_int(rng, -15, 25);
    }
  }
  const BoxSeries gt = interpolate_ground_truth(set, 0, 100);
  const EvaluationResult result = evaluate(gt, gt, EvalConfig{});
  const MetricsReport& r = result.report;
  const bool ok = r.precision == 1.0 && r.recall == 1.0 && r.f1 == 1.0 &&
                  r.jaccard == 1.0 && r.mota == 1.0 && r.motp == 1.0 &&
                  result.counts.idsw == 0;
  report(5, "ground truth vs itself scores 1.000 on all six metrics", ok);
}

TEST_CASE("criterion 6: evaluator hand oracles (IDSW and MOTA arithmetic)") {
  // One ground truth covered by two successive hypothesis ids.
  BoxSeries gt, hyp;
  for (int f = 0; f < 10; ++f) {
    gt[f] = {{1, BoxF{50, 50, 4, 3}}};
    hyp[f] = {{f < 5 ? 100 : 200, BoxF{50, 50, 4, 3}}};
  }
  const EvaluationResult switched = evaluate(hyp, gt, EvalConfig{});
  bool ok = switched.counts.idsw == 1;

  EventCounts counts;
  counts.gt = 100;
  counts.fn = 10;
  counts.fp = 5;
  counts.idsw = 2;
  counts.tp = 90;
  counts.match_count = 90;
  counts.iou_sum = 60.0;
  ok = ok && std::abs(metrics(counts).mota - 0.830) <= 1e-9;
  report(6, "two-id coverage counts IDSW=1; Eq-21 case scores MOTA=0.830", ok);
}

TEST_CASE("criterion 7: end-to-end synthetic recall/precision") {
  const auto start = std::chrono::steady_clock::now();
  const BenchmarkRun run = run_benchmark();
  const double elapsed = seconds_since(start);
  std::printf("  (recall %.4f precision %.4f mota %.4f motp %.4f in %.1fs)\n",
              run.report.recall, run.report.precision, run.report.mota,
              run.report.motp, elapsed);
  const bool ok =
      run.report.recall >= 0.70 && run.report.precision >= 0.80 && elapsed < 60.0;
  report(7, "15-vehicle drifting scene: recall >= 0.70, precision >= 0.80 (<60s)", ok);
}

TEST_CASE("criterion 8: regular-noise rejection on a vehicle-free scene") {
  synth::ScenarioConfig config;
  config.width = 512;
  config.height = 512;
  config.num_frames = 120;
  config.noise_lambda = 0.25;
  config.drift = Point2d{0.2, 0.1};
  config.block_contrast = 80.0;
  config.seed = 808;

  const synth::Scenario scenario = synth::generate(config);
  PipelineConfig pipeline_config;
  const PipelineResult result = run_pipeline(scenario.frames, pipeline_config);

  long long candidates = 0, hypotheses = 0;
  for (const FrameLog& log : result.frame_logs) {
    candidates += log.candidate_count;
    hypotheses += static_cast<long long>(log.hypotheses.size());
  }
  const double reduction =
      candidates > 0
          ? 1.0 - static_cast<double>(hypotheses) / static_cast<double>(candidates)
          : 1.0;
  const double tracks_per_100 =
      100.0 * result.tracks_started / static_cast<double>(config.num_frames);
  std::printf("  (%lld candidates -> %lld hypotheses, reduction %.1f%%, "
              "%.2f tracks per 100 frames)\n",
              candidates, hypotheses, 100.0 * reduction, tracks_per_100);
  const bool ok = reduction >= 0.70 && tracks_per_100 <= 0.5;
  report(8, "discriminator cuts >= 70% of candidates; <= 0.5 tracks/100 frames", ok);
}

TEST_CASE("criterion 9: byte-identical determinism of the full pipeline") {
  const BenchmarkRun first = run_benchmark();
  const BenchmarkRun second = run_benchmark();
  const bool ok = first.tracks_csv == second.tracks_csv &&
                  first.metrics_json == second.metrics_json;
  report(9, "two benchmark runs produce identical track CSV and metrics JSON", ok);
}

TEST_CASE("criterion 10: noise-fit diagnostics on 10k model draws") {
  std::mt19937_64 rng(1010);
  std::vector<double> draws(10000);
  for (double& d : draws) d = exponential_draw(rng, 1.0);
  const FitDiagnostics diag = fit_diagnostics(draws, 1.0);
  std::printf("  (KS %.5f, KL %.5f)\n", diag.ks_distance, diag.kl_distance);
  const bool ok = diag.ks_distance < 1.63 / std::sqrt(10000.0) &&
                  diag.kl_distance < 0.05;
  report(10, "KS < 0.0163 at 99% confidence and 64-bin KL < 0.05", ok);
}
