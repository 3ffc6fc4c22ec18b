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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "tinytrack/kalman.hpp"
#include "tinytrack/rng.hpp"

using namespace tinytrack;

TEST_CASE("transition matrix kinematics") {
  FilterState state;
  state.mean << 0, 0, 1, 0, 0, 0;
  const FilterState moved = kf_predict(state, 1.0, 0.0);
  CHECK(moved.mean(0) == doctest::Approx(1.0));
  CHECK(moved.mean(1) == doctest::Approx(0.0));

  FilterState accel;
  accel.mean << 0, 0, 0, 0, 2, 0;
  const FilterState kicked = kf_predict(accel, 1.0, 0.0);
  CHECK(kicked.mean(0) == doctest::Approx(1.0));  // tau^2/2 * a
  CHECK(kicked.mean(2) == doctest::Approx(2.0));  // tau * a
}

TEST_CASE("two unit predicts equal one double predict on the mean") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    FilterState state;
    for (int i = 0; i < 6; ++i) state.mean(i) = uniform_range(rng, -5.0, 5.0);
    const Vector6d twice =
        kf_predict(kf_predict(state, 1.0, 0.0), 1.0, 0.0).mean;
    const Vector6d once = kf_predict(state, 2.0, 0.0).mean;
    CHECK((twice - once).norm() == doctest::Approx(0.0).epsilon(1e-12));
  }
  // And the matrix identity itself.
  const Matrix6d f1 = transition_matrix(1.0);
  const Matrix6d f2 = transition_matrix(2.0);
  CHECK(((f1 * f1) - f2).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("update with the predicted position leaves the mean in place") {
  FilterState state;
  state.mean << 4.0, -3.0, 1.0, 0.5, 0.0, 0.0;
  state.covariance = Matrix6d::Identity() * 2.0;
  const FilterState updated =
      kf_update(state, Point2d{4.0, -3.0}, 4.0);
  CHECK(updated.mean(0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(updated.mean(1) == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("tiny measurement noise pins the posterior to the measurement") {
  FilterState state;
  state.mean << 10.0, 10.0, 0.0, 0.0, 0.0, 0.0;
  state.covariance = Matrix6d::Identity() * 25.0;
  const FilterState updated = kf_update(state, Point2d{13.0, 7.5}, 1e-9);
  CHECK(updated.mean(0) == doctest::Approx(13.0).epsilon(1e-6));
  CHECK(updated.mean(1) == doctest::Approx(7.5).epsilon(1e-6));
}

TEST_CASE("filtering beats raw measurements on a noisy trajectory") {
  // Constant-acceleration truth with seeded Gaussian measurement noise.
  std::mt19937_64 rng(20260809);
  const double meas_sigma = 2.0;

  KinematicState truth;
  truth.x = 5.0;
  truth.y = -2.0;
  truth.vx = 1.2;
  truth.vy = 0.8;
  truth.ax = 0.02;
  truth.ay = -0.015;

  FilterState filter;
  filter.mean = truth.to_vector();
  filter.covariance = Matrix6d::Identity() * 4.0;

  double raw_sq = 0.0, filt_sq = 0.0;
  int steps = 0;
  Vector6d state = truth.to_vector();
  const Matrix6d f = transition_matrix(1.0);
  for (int k = 0; k < 50; ++k) {
    state = f * state;
    const Point2d meas{state(0) + normal_draw(rng, 0.0, meas_sigma),
                       state(1) + normal_draw(rng, 0.0, meas_sigma)};
    filter = kf_predict(filter, 1.0, 0.01);
    filter = kf_update(filter, meas, meas_sigma * meas_sigma);
    raw_sq += (meas.x - state(0)) * (meas.x - state(0)) +
              (meas.y - state(1)) * (meas.y - state(1));
    filt_sq += (filter.mean(0) - state(0)) * (filter.mean(0) - state(0)) +
               (filter.mean(1) - state(1)) * (filter.mean(1) - state(1));
    ++steps;
  }
  const double raw_rms = std::sqrt(raw_sq / steps);
  const double filt_rms = std::sqrt(filt_sq / steps);
  CHECK(filt_rms < raw_rms);
}

TEST_CASE("covariance stays symmetric PSD through a long random run") {
  std::mt19937_64 rng(555);
  FilterState filter;
  filter.mean << 0, 0, 0.5, -0.5, 0.01, 0.02;
  filter.covariance = Matrix6d::Identity() * 9.0;
  for (int step = 0; step < 1000; ++step) {
    filter = kf_predict(filter, 1.0, 0.01);
    if (rng() % 3 != 0) {
      const Point2d meas{filter.mean(0) + normal_draw(rng, 0.0, 2.0),
                         filter.mean(1) + normal_draw(rng, 0.0, 2.0)};
      filter = kf_update(filter, meas, 4.0);
    }
    const Matrix6d& p = filter.covariance;
    CHECK((p - p.transpose()).norm() < 1e-9);
    const Eigen::SelfAdjointEigenSolver<Matrix6d> eigen(p);
    CHECK(eigen.eigenvalues().minCoeff() > -1e-9);
  }
}

TEST_CASE("exact measurements drive the prediction error to zero quickly") {
  // Noise-free constant-acceleration motion, exact position measurements:
  // the prediction must be consistent within 5 frames.
  Vector6d state;
  state << 0.0, 0.0, 2.0, -1.0, 0.1, 0.05;
  const Matrix6d f = transition_matrix(1.0);

  FilterState filter;
  // Deliberately wrong initial velocity/acceleration.
  filter.mean << 0.0, 0.0, 0.0, 0.0, 0.0, 0.0;
  filter.covariance = Matrix6d::Identity() * 100.0;

  double last_prediction_error = 1e9;
  for (int k = 0; k < 12; ++k) {
    state = f * state;
    filter = kf_predict(filter, 1.0, 1e-6);
    last_prediction_error =
        std::hypot(filter.mean(0) - state(0), filter.mean(1) - state(1));
    filter = kf_update(filter, Point2d{state(0), state(1)}, 1e-8);
  }
  CHECK(last_prediction_error < 0.05);

  // Also check the 5-frame contract on the position error after update.
  Vector6d state2;
  state2 << 3.0, 4.0, -1.0, 0.5, 0.02, -0.03;
  FilterState filter2;
  filter2.mean = Vector6d::Zero();
  filter2.covariance = Matrix6d::Identity() * 100.0;
  double err = 1e9;
  for (int k = 0; k < 5; ++k) {
    state2 = f * state2;
    filter2 = kf_predict(filter2, 1.0, 1e-6);
    filter2 = kf_update(filter2, Point2d{state2(0), state2(1)}, 1e-8);
    err = std::hypot(filter2.mean(0) - state2(0), filter2.mean(1) - state2(1));
  }
  CHECK(err < 1e-3);
}
