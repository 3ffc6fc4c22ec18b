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

#ifndef TINYTRACK_HUNGARIAN_HPP_
#define TINYTRACK_HUNGARIAN_HPP_

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace tinytrack {

struct AssignmentResult {
  std::vector<std::pair<int, int>> pairs;  // (row, col), sorted by row
  std::vector<int> unmatched_rows;
  std::vector<int> unmatched_cols;
  double total_cost = 0.0;
};

// Minimum-cost assignment on an MxN matrix of finite costs: a maximum
// cardinality (min(M,N)) matching minimizing the total cost. Empty
// dimensions yield an empty matching.
AssignmentResult hungarian(const Eigen::MatrixXd& cost);

}  // namespace tinytrack

#endif  // TINYTRACK_HUNGARIAN_HPP_
