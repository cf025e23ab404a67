// Copyright 2026 The x2mon-sim Authors
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

#pragma once

#include <cmath>
#include <stdexcept>

namespace x2mon {

/// Bessel function of the first kind J_n(x), integer order n >= 0, from its
/// ascending power series
///
///   J_n(x) = sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!).
///
/// Intended for the small arguments that appear in the swap coupling
/// (|x| ~ 1e-2). Terms are summed until the next one drops below
/// `tolerance`; for |x| <= 2 the series alternates with decreasing terms, so
/// the truncation remainder is bounded by the first omitted term.
template <typename Scalar>
Scalar bessel_j_series(int n, Scalar x, Scalar tolerance = Scalar(1e-15)) {
  if (n < 0) {
    throw std::invalid_argument("bessel_j_series: negative order");
  }
  if (std::abs(x) > Scalar(2)) {
    throw std::domain_error("bessel_j_series: |x| > 2 outside series range");
  }
  const Scalar half = x / Scalar(2);
  Scalar term = Scalar(1);
  for (int k = 1; k <= n; ++k) term *= half / Scalar(k);
  Scalar sum = term;
  const Scalar half_sq = half * half;
  for (int k = 1; k < 200; ++k) {
    term *= -half_sq / (Scalar(k) * Scalar(k + n));
    sum += term;
    if (std::abs(term) < tolerance) break;
  }
  return sum;
}

template <typename Scalar>
Scalar bessel_j0(Scalar x) {
  return bessel_j_series(0, x);
}

template <typename Scalar>
Scalar bessel_j1(Scalar x) {
  return bessel_j_series(1, x);
}

}  // namespace x2mon
