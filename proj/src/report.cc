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

#include "jointmeas/report.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "jointmeas/format.h"
#include "jointmeas/rng.h"

namespace jointmeas {

namespace {

// Rounding slack for probabilities computed as squared norms.
constexpr double kDistributionTolerance = 1e-9;

std::string cell_text(const Cell &cell) {
    if (const auto *s = std::get_if<std::string>(&cell)) {
        return *s;
    }
    if (const auto *d = std::get_if<double>(&cell)) {
        return format_number(*d);
    }
    if (const auto *i = std::get_if<std::int64_t>(&cell)) {
        return std::to_string(*i);
    }
    return std::get<bool>(cell) ? "true" : "false";
}

nlohmann::ordered_json cell_json(const Cell &cell) {
    if (const auto *s = std::get_if<std::string>(&cell)) {
        return *s;
    }
    if (const auto *d = std::get_if<double>(&cell)) {
        return round_for_output(*d);
    }
    if (const auto *i = std::get_if<std::int64_t>(&cell)) {
        return *i;
    }
    return std::get<bool>(cell);
}

void write_fields(std::ostringstream &out, const std::vector<Field> &fields) {
    std::size_t width = 0;
    for (const auto &[key, value] : fields) {
        width = std::max(width, key.size());
    }
    for (const auto &[key, value] : fields) {
        out << "  " << key << ":" << std::string(width - key.size() + 1, ' ') << cell_text(value) << "\n";
    }
}

}  // namespace

void validate(const ReportDocument &doc) {
    for (const Table &table : doc.tables) {
        for (const std::string &column : table.distribution_columns) {
            auto it = std::find(table.columns.begin(), table.columns.end(), column);
            if (it == table.columns.end()) {
                throw InvariantViolation("table '" + table.name + "' has no column '" + column + "'");
            }
            std::size_t index = static_cast<std::size_t>(it - table.columns.begin());
            double total = 0.0;
            for (const auto &row : table.rows) {
                const auto *p = std::get_if<double>(&row.at(index));
                if (p == nullptr || !(*p >= -kDistributionTolerance && *p <= 1.0 + kDistributionTolerance)) {
                    throw InvariantViolation("table '" + table.name + "': '" + column + "' entry outside [0, 1]");
                }
                total += *p;
            }
            if (std::abs(total - 1.0) > kDistributionTolerance) {
                throw InvariantViolation("table '" + table.name + "': '" + column + "' sums to " +
                                         format_number(total));
            }
        }
    }
}

std::string render_text(const ReportDocument &doc) {
    std::ostringstream out;
    out << "jointmeas report\n";
    write_fields(out, {
                          {"schema", std::string(kReportSchema)},
                          {"version", std::string(kVersion)},
                          {"rng", std::string(CounterRng::kAlgorithm)},
                          {"scenario", doc.scenario},
                          {"semantics", doc.semantics},
                      });
    if (!doc.parameters.empty()) {
        out << "\n[parameters]\n";
        write_fields(out, doc.parameters);
    }
    for (const Section &section : doc.sections) {
        out << "\n[" << section.name << "]\n";
        write_fields(out, section.fields);
    }
    for (const Table &table : doc.tables) {
        out << "\n== " << table.name << " ==\n";
        std::vector<std::vector<std::string>> text;
        text.push_back(table.columns);
        for (const auto &row : table.rows) {
            std::vector<std::string> line;
            for (const Cell &c : row) {
                line.push_back(cell_text(c));
            }
            text.push_back(std::move(line));
        }
        std::vector<std::size_t> widths(table.columns.size(), 0);
        for (const auto &line : text) {
            for (std::size_t i = 0; i < line.size() && i < widths.size(); i++) {
                widths[i] = std::max(widths[i], line[i].size());
            }
        }
        for (const auto &line : text) {
            for (std::size_t i = 0; i < line.size(); i++) {
                out << line[i];
                if (i + 1 < line.size()) {
                    out << std::string(widths[i] - line[i].size() + 2, ' ');
                }
            }
            out << "\n";
        }
    }
    return out.str();
}

std::string render_json(const ReportDocument &doc) {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["version"] = kVersion;
    j["rng_algorithm"] = CounterRng::kAlgorithm;
    j["scenario"] = doc.scenario;
    j["semantics"] = doc.semantics;
    j["parameters"] = nlohmann::ordered_json::object();
    for (const auto &[key, value] : doc.parameters) {
        j["parameters"][key] = cell_json(value);
    }
    j["sections"] = nlohmann::ordered_json::object();
    for (const Section &section : doc.sections) {
        auto &s = j["sections"][section.name];
        s = nlohmann::ordered_json::object();
        for (const auto &[key, value] : section.fields) {
            s[key] = cell_json(value);
        }
    }
    j["tables"] = nlohmann::ordered_json::object();
    for (const Table &table : doc.tables) {
        auto &t = j["tables"][table.name];
        t["columns"] = table.columns;
        t["rows"] = nlohmann::ordered_json::array();
        for (const auto &row : table.rows) {
            nlohmann::ordered_json r = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < row.size(); i++) {
                r[table.columns.at(i)] = cell_json(row[i]);
            }
            t["rows"].push_back(std::move(r));
        }
    }
    return j.dump(2) + "\n";
}

std::string format_complex(Complex z) {
    bool has_re = std::abs(z.real()) >= kRenderZero;
    bool has_im = std::abs(z.imag()) >= kRenderZero;
    if (!has_im) {
        return format_number(z.real());
    }
    if (!has_re) {
        return format_number(z.imag()) + "i";
    }
    std::string im = format_signed(z.imag());
    return "(" + format_number(z.real()) + im + "i)";
}

std::string format_ket(const ComplexVector &amplitudes) {
    int n = 0;
    while ((std::size_t{1} << n) < amplitudes.dim()) {
        n++;
    }
    std::string out;
    for (std::size_t i = 0; i < amplitudes.dim(); i++) {
        Complex z = amplitudes[i];
        if (std::abs(z) < kRenderZero) {
            continue;
        }
        std::string coeff = format_complex(z);
        bool negative = coeff[0] == '-';
        if (out.empty()) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        if (negative) {
            coeff.erase(0, 1);
        }
        if (coeff != "1") {
            out += coeff;
        }
        out += "|" + basis_label(i, n) + ">";
    }
    return out.empty() ? "0" : out;
}

std::string format_ket(const Ket &ket) { return format_ket(ket.vector()); }

}  // namespace jointmeas
