// Copyright 2026 The jointmeas Authors
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

#ifndef JOINTMEAS_FORMAT_H
#define JOINTMEAS_FORMAT_H

#include <string>

namespace jointmeas {

/// Values this close to zero render as 0 so rounding noise never reaches output.
inline constexpr double kRenderZero = 1e-12;

/// 12 significant digits, shortest form ("%.12g"), -0 and near-zero folded to 0.
std::string format_number(double x);
/// Like format_number but with an explicit '+' on positive values ("+1", "-1", "0").
std::string format_signed(double x);
/// The double that format_number(x) denotes. Text and JSON renderings both go
/// through this so they carry identical numbers.
double round_for_output(double x);

}  // namespace jointmeas

#endif
