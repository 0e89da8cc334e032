// Copyright 2026 The ExtremeCast Authors
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

#pragma once

#include <vector>

namespace extremecast {

// Natural cubic spline (zero second derivative at both ends) through points
// with strictly increasing abscissae. Outside the knot range the end cubic
// segments are extrapolated.
class NaturalCubicSpline {
 public:
  NaturalCubicSpline(std::vector<double> xs, std::vector<double> ys);
  double operator()(double x) const;

 private:
  std::vector<double> xs_, ys_, m_;  // m_ = second derivatives at the knots
};

}  // namespace extremecast
