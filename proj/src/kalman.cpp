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

#include "tinytrack/kalman.hpp"

#include "tinytrack/errors.hpp"

namespace tinytrack {

Vector6d KinematicState::to_vector() const {
  Vector6d v;
  v << x, y, vx, vy, ax, ay;
  return v;
}

KinematicState KinematicState::from_vector(const Vector6d& v) {
  return KinematicState{v(0), v(1), v(2), v(3), v(4), v(5)};
}

Matrix6d transition_matrix(double tau) {
  Matrix6d f = Matrix6d::Identity();
  const double half_tau2 = 0.5 * tau * tau;
  f(0, 2) = tau;
  f(1, 3) = tau;
  f(0, 4) = half_tau2;
  f(1, 5) = half_tau2;
  f(2, 4) = tau;
  f(3, 5) = tau;
  return f;
}

Matrix6d process_noise(double tau, double q_scale) {
  const double t2 = tau * tau;
  const double t3 = t2 * tau;
  const double t4 = t3 * tau;
  const double t5 = t4 * tau;
  Eigen::Matrix3d block;
  block << t5 / 20.0, t4 / 8.0, t3 / 6.0,
           t4 / 8.0,  t3 / 3.0, t2 / 2.0,
           t3 / 6.0,  t2 / 2.0, tau;
  Matrix6d q = Matrix6d::Zero();
  // State is interleaved [x, y, vx, vy, ax, ay]: the x chain occupies
  // indices {0,2,4} and the y chain {1,3,5}.
  const int chain[3] = {0, 2, 4};
  for (int axis = 0; axis < 2; ++axis) {
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        q(chain[r] + axis, chain[c] + axis) = q_scale * block(r, c);
      }
    }
  }
  return q;
}

Eigen::Matrix<double, 2, 6> measurement_matrix() {
  Eigen::Matrix<double, 2, 6> h = Eigen::Matrix<double, 2, 6>::Zero();
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  return h;
}

FilterState kf_predict(const FilterState& filter, double tau, double q_scale) {
  if (!(tau > 0.0)) throw ArgumentError("tau must be positive");
  if (q_scale < 0.0) throw ArgumentError("q_scale must be non-negative");
  const Matrix6d f = transition_matrix(tau);
  FilterState out;
  out.mean = f * filter.mean;
  out.covariance = f * filter.covariance * f.transpose() + process_noise(tau, q_scale);
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
  return out;
}

FilterState kf_update(const FilterState& filter, const Point2d& measurement,
                      double r_scale) {
  if (!(r_scale > 0.0)) throw ArgumentError("r_scale must be positive");
  const Eigen::Matrix<double, 2, 6> h = measurement_matrix();
  const Eigen::Matrix2d r = r_scale * Eigen::Matrix2d::Identity();

  const Eigen::Matrix2d innovation_cov =
      h * filter.covariance * h.transpose() + r;
  const double det = innovation_cov.determinant();
  if (!(det > 0.0) || !std::isfinite(det)) {
    throw NumericalError("innovation covariance is singular");
  }
  const Eigen::Matrix<double, 6, 2> gain =
      filter.covariance * h.transpose() * innovation_cov.inverse();

  Eigen::Vector2d z;
  z << measurement.x, measurement.y;
  const Eigen::Vector2d innovation = z - h * filter.mean;

  FilterState out;
  out.mean = filter.mean + gain * innovation;
  const Matrix6d identity_minus_kh = Matrix6d::Identity() - gain * h;
  out.covariance = identity_minus_kh * filter.covariance *
                       identity_minus_kh.transpose() +
                   gain * r * gain.transpose();
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
  return out;
}

}  // namespace tinytrack
