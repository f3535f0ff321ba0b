// Copyright 2026 The finsent Authors.
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

#ifndef FINSENT_STATS_H_
#define FINSENT_STATS_H_

namespace finsent {

// I_x(a, b) for a, b > 0 and x in [0, 1], by continued fraction.
double RegularizedIncompleteBeta(double a, double b, double x);

// Student-t distribution with `df` > 0 degrees of freedom.
double StudentTCdf(double t, double df);
// P(|T| >= |t|).
double StudentTTwoSidedP(double t, double df);

}  // namespace finsent

#endif  // FINSENT_STATS_H_
