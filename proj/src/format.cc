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

#include "jointmeas/format.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace jointmeas {

std::string format_number(double x) {
    if (std::abs(x) < kRenderZero) {
        return "0";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string format_signed(double x) {
    std::string s = format_number(x);
    if (s != "0" && s[0] != '-') {
        s.insert(s.begin(), '+');
    }
    return s;
}

double round_for_output(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

}  // namespace jointmeas
