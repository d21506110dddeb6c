// Copyright 2026 The kfou Authors.
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

#ifndef KFOU_SPECIAL_HPP_
#define KFOU_SPECIAL_HPP_

namespace kfou {

// Scaled complementary error function e^{z^2} erfc(z), accurate for all z
// where the result is finite. For z >= 26 an asymptotic series is used.
double erfcx(double z);

// Modified Bessel function of the second kind, order zero, for x > 0.
double bessel_k0(double x);

}  // namespace kfou

#endif  // KFOU_SPECIAL_HPP_
