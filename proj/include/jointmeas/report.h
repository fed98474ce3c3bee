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

#ifndef JOINTMEAS_REPORT_H
#define JOINTMEAS_REPORT_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "jointmeas/hilbert.h"

namespace jointmeas {

inline constexpr std::string_view kVersion = "0.1.0";
/// Bumped whenever the structured layout changes; see docs/report-schema.md.
inline constexpr std::string_view kReportSchema = "jointmeas.report/1";

using Cell = std::variant<std::string, double, std::int64_t, bool>;
using Field = std::pair<std::string, Cell>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// Columns whose entries must lie in [0, 1] and sum to 1 within 1e-9.
    std::vector<std::string> distribution_columns;
};

struct Section {
    std::string name;
    std::vector<Field> fields;
};

struct ReportDocument {
    std::string scenario;
    std::string semantics;
    std::vector<Field> parameters;
    std::vector<Section> sections;
    std::vector<Table> tables;
};

/// Thrown when a report fails its own consistency checks before being written.
class InvariantViolation : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Checks every distribution column. Throws InvariantViolation.
void validate(const ReportDocument &doc);

std::string render_text(const ReportDocument &doc);
std::string render_json(const ReportDocument &doc);

std::string format_complex(Complex z);
/// z-basis expansion such as "0.707106781187|+-> - 0.707106781187|-+>".
std::string format_ket(const Ket &ket);
std::string format_ket(const ComplexVector &amplitudes);

}  // namespace jointmeas

#endif
