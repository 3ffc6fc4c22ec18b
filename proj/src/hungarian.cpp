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

#include "tinytrack/hungarian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tinytrack/errors.hpp"

namespace tinytrack {

namespace {

// Kuhn-Munkres with row/column potentials and shortest augmenting paths,
// O(n^2 m). Requires rows <= cols; assigns every row. 1-based internally.
std::vector<int> solve_rows_leq_cols(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  const int m = static_cast<int>(a.cols());
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> col_to_row(m + 1, 0);  // 0 = unassigned
  std::vector<int> way(m + 1, 0);

  for (int i = 1; i <= n; ++i) {
    col_to_row[0] = i;
    int j0 = 0;
    std::vector<double> min_slack(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = col_to_row[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < min_slack[j]) {
          min_slack[j] = cur;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[col_to_row[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (col_to_row[j0] != 0);
    do {
      const int j1 = way[j0];
      col_to_row[j0] = col_to_row[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (col_to_row[j] != 0) row_to_col[col_to_row[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

AssignmentResult hungarian(const Eigen::MatrixXd& cost) {
  const int rows = static_cast<int>(cost.rows());
  const int cols = static_cast<int>(cost.cols());
  if (!cost.allFinite()) {
    throw ArgumentError("assignment costs must be finite");
  }

  AssignmentResult result;
  if (rows == 0 || cols == 0) {
    for (int i = 0; i < rows; ++i) result.unmatched_rows.push_back(i);
    for (int j = 0; j < cols; ++j) result.unmatched_cols.push_back(j);
    return result;
  }

  std::vector<int> row_to_col;
  if (rows <= cols) {
    row_to_col = solve_rows_leq_cols(cost);
  } else {
    const std::vector<int> col_to_row =
        solve_rows_leq_cols(cost.transpose().eval());
    row_to_col.assign(rows, -1);
    for (int j = 0; j < cols; ++j) {
      if (col_to_row[j] >= 0) row_to_col[col_to_row[j]] = j;
    }
  }

  std::vector<char> col_used(cols, 0);
  for (int i = 0; i < rows; ++i) {
    const int j = row_to_col[i];
    if (j < 0) {
      result.unmatched_rows.push_back(i);
      continue;
    }
    result.pairs.emplace_back(i, j);
    result.total_cost += cost(i, j);
    col_used[j] = 1;
  }
  for (int j = 0; j < cols; ++j) {
    if (!col_used[j]) result.unmatched_cols.push_back(j);
  }
  return result;
}

}  // namespace tinytrack
