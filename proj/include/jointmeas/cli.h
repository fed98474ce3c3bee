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

#ifndef JOINTMEAS_CLI_H
#define JOINTMEAS_CLI_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "jointmeas/hilbert.h"
#include "jointmeas/measurement.h"
#include "jointmeas/report.h"
#include "jointmeas/teleport.h"

namespace jointmeas {

/// Unparseable command-line spec. `position` is the 0-based offset of the
/// offending character within the spec string.
class SpecError : public std::invalid_argument {
   public:
    SpecError(const std::string &spec, std::size_t position, const std::string &what);
    std::size_t position() const { return position_; }

   private:
    std::size_t position_;
};

/// "1", "-0.5", "0.6+0.8i", "0.8i", "-i".
Complex parse_complex(std::string_view text);
/// singlet | psi- | psi+ | phi- | phi+ | basis:<+/- labels> | amps:<c1>,<c2>,...
Ket parse_state_spec(std::string_view spec);
/// x | y | z | diag:<v1>,<v2>
Observable parse_local_observable(std::string_view spec);
/// Two axis letters, e.g. "zx" -> (sz, sx).
std::pair<Observable, Observable> parse_axis_pair(std::string_view spec);

struct DistributionOptions {
    std::string state;
    std::string obs;
    Semantics semantics = Semantics::luders;
    /// 1-based, as on the command line.
    std::pair<int, int> particles{1, 2};
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

struct TeleportOptions {
    std::optional<std::string> a;
    std::optional<std::string> b;
    std::uint32_t random = 0;
    Semantics semantics = Semantics::luders;
    std::uint64_t seed = 0;
    std::uint32_t trials = 1;
    std::optional<BellLabel> force_branch;
    bool naive = false;
};

struct DegeneracyOptions {
    std::optional<std::string> obs;
    std::optional<std::string> left;
    std::optional<std::string> right;
    std::optional<std::string> bell_op;
};

ReportDocument cmd_distribution(const DistributionOptions &options);
ReportDocument cmd_commutators();
ReportDocument cmd_teleport(const TeleportOptions &options);
ReportDocument cmd_degeneracy(const DegeneracyOptions &options);

/// Entry point behind the jointmeas executable. `args` excludes the program
/// name. Exit codes: 0 success (a semantics refusal included), 1 usage or
/// input error, 2 internal invariant violation.
int run_cli(std::span<const std::string> args, std::ostream &out, std::ostream &err);

}  // namespace jointmeas

#endif
