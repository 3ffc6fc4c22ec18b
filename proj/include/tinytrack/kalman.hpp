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

#ifndef TINYTRACK_KALMAN_HPP_
#define TINYTRACK_KALMAN_HPP_

#include <Eigen/Dense>

#include "tinytrack/geometry.hpp"

namespace tinytrack {

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;

// Position, velocity and acceleration in pixel/frame units,
// ordered [x, y, vx, vy, ax, ay].
struct KinematicState {
  double x = 0.0, y = 0.0;
  double vx = 0.0, vy = 0.0;
  double ax = 0.0, ay = 0.0;

  Vector6d to_vector() const;
  static KinematicState from_vector(const Vector6d& v);
};

struct FilterState {
  Vector6d mean = Vector6d::Zero();
  Matrix6d covariance = Matrix6d::Identity();
};

// Constant-acceleration transition over one interval of length tau:
// positions gain v*tau + a*tau^2/2, velocities gain a*tau.
Matrix6d transition_matrix(double tau);

// Discretized white-jerk process noise for the constant-acceleration model,
// scaled by q_scale; per-axis blocks [tau^5/20, tau^4/8, tau^3/6; ...].
Matrix6d process_noise(double tau, double q_scale);

// Position-only 2x6 measurement matrix.
Eigen::Matrix<double, 2, 6> measurement_matrix();

FilterState kf_predict(const FilterState& filter, double tau, double q_scale);

// Standard update with measurement noise R = r_scale * I2, Joseph-form
// covariance so the posterior stays symmetric PSD.
FilterState kf_update(const FilterState& filter, const Point2d& measurement,
                      double r_scale);

}  // namespace tinytrack

#endif  // TINYTRACK_KALMAN_HPP_
