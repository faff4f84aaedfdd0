// Copyright 2026 The Authors.
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
#ifndef SANTA_SIMPLEX_H_
#define SANTA_SIMPLEX_H_

#include <cmath>
#include <cstddef>
#include <vector>

#include "santa/errors.h"

namespace santa {

enum class LpStatus { kOptimal, kUnbounded, kPivotLimit };

template <class T>
struct LpResult {
  LpStatus status = LpStatus::kOptimal;
  T objective = T(0);
  std::vector<T> x;      // structural values
  std::vector<T> duals;  // one per row, nonnegative at optimum
  int pivots = 0;
};

template <class T>
struct LpTolerance {
  static T eps() { return T(0); }
};

template <>
struct LpTolerance<double> {
  static double eps() { return 1e-11; }
};

// Dense tableau simplex for  max c.x  s.t.  A x <= b, x >= 0  with b >= 0,
// so the slack basis is feasible. Dantzig pricing that falls back to Bland's
// rule after a run of degenerate pivots.
template <class T>
LpResult<T> solve_lp(const std::vector<std::vector<T>>& a,
                     const std::vector<T>& b, const std::vector<T>& c,
                     int max_pivots = 100000) {
  const size_t rows = a.size();
  const size_t cols = c.size();
  const size_t width = cols + rows + 1;
  const T eps = LpTolerance<T>::eps();
  std::vector<T> tab((rows + 1) * width, T(0));
  auto at = [&](size_t r, size_t k) -> T& { return tab[r * width + k]; };
  for (size_t r = 0; r < rows; ++r) {
    if (a[r].size() != cols) throw ContractError("ragged LP matrix");
    if (b[r] < T(0)) throw ContractError("LP right-hand side must be >= 0");
    for (size_t k = 0; k < cols; ++k) at(r + 1, k) = a[r][k];
    at(r + 1, cols + r) = T(1);
    at(r + 1, width - 1) = b[r];
  }
  for (size_t k = 0; k < cols; ++k) at(0, k) = -c[k];
  std::vector<size_t> basis(rows);
  for (size_t r = 0; r < rows; ++r) basis[r] = cols + r;

  LpResult<T> result;
  int degenerate_run = 0;
  while (true) {
    const bool bland = degenerate_run > 50;
    size_t enter = width;
    T best = -eps;
    for (size_t k = 0; k + 1 < width; ++k) {
      if (at(0, k) < best) {
        enter = k;
        if (bland) break;
        best = at(0, k);
      }
    }
    if (enter == width) break;
    size_t leave = rows;
    T best_ratio = T(0);
    for (size_t r = 0; r < rows; ++r) {
      const T& coef = at(r + 1, enter);
      if (!(coef > eps)) continue;
      T ratio = at(r + 1, width - 1) / coef;
      if (leave == rows || ratio < best_ratio ||
          (!(best_ratio < ratio) && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave == rows) {
      result.status = LpStatus::kUnbounded;
      return result;
    }
    if (result.pivots >= max_pivots) {
      result.status = LpStatus::kPivotLimit;
      break;
    }
    degenerate_run = (best_ratio == T(0)) ? degenerate_run + 1 : 0;
    ++result.pivots;
    const size_t pr = leave + 1;
    const T pivot = at(pr, enter);
    for (size_t k = 0; k < width; ++k) at(pr, k) /= pivot;
    for (size_t r = 0; r <= rows; ++r) {
      if (r == pr) continue;
      const T factor = at(r, enter);
      if (factor == T(0)) continue;
      for (size_t k = 0; k < width; ++k) {
        if (at(pr, k) != T(0)) at(r, k) -= factor * at(pr, k);
      }
    }
    basis[leave] = enter;
  }
  result.x.assign(cols, T(0));
  for (size_t r = 0; r < rows; ++r) {
    if (basis[r] < cols) result.x[basis[r]] = at(r + 1, width - 1);
  }
  result.duals.resize(rows);
  for (size_t r = 0; r < rows; ++r) result.duals[r] = at(0, cols + r);
  result.objective = at(0, width - 1);
  return result;
}

}  // namespace santa

#endif  // SANTA_SIMPLEX_H_
