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

#include "jointmeas/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <vector>

#include "CLI11.hpp"
#include "jointmeas/format.h"
#include "jointmeas/rng.h"

namespace jointmeas {

SpecError::SpecError(const std::string &spec, std::size_t position, const std::string &what)
    : std::invalid_argument("cannot parse '" + spec + "' at position " + std::to_string(position) + ": " + what),
      position_(position) {}

// ---------------------------------------------------------------------------
// Spec parsing

namespace {

bool parse_double_prefix(const std::string &text, std::size_t start, double &value, std::size_t &end) {
    if (start >= text.size() || std::isspace(static_cast<unsigned char>(text[start]))) {
        return false;
    }
    const char *begin = text.c_str() + start;
    char *stop = nullptr;
    value = std::strtod(begin, &stop);
    if (stop == begin || !std::isfinite(value)) {
        return false;
    }
    end = start + static_cast<std::size_t>(stop - begin);
    return true;
}

// Parses `text` as a complex literal; error positions are shifted by `offset`
// and reported against `whole`.
Complex parse_complex_in(const std::string &text, const std::string &whole, std::size_t offset) {
    auto fail = [&](std::size_t pos, const char *why) -> Complex { throw SpecError(whole, offset + pos, why); };
    if (text.empty()) {
        return fail(0, "empty number");
    }
    if (text == "i" || text == "+i") {
        return {0.0, 1.0};
    }
    if (text == "-i") {
        return {0.0, -1.0};
    }
    double first = 0.0;
    std::size_t end = 0;
    if (!parse_double_prefix(text, 0, first, end)) {
        return fail(0, "expected a number");
    }
    if (end == text.size()) {
        return {first, 0.0};
    }
    if (text[end] == 'i' && end + 1 == text.size()) {
        return {0.0, first};
    }
    if (text[end] != '+' && text[end] != '-') {
        return fail(end, "expected '+', '-' or 'i'");
    }
    std::string rest = text.substr(end);
    if (rest == "+i") {
        return {first, 1.0};
    }
    if (rest == "-i") {
        return {first, -1.0};
    }
    double second = 0.0;
    std::size_t end2 = 0;
    if (!parse_double_prefix(text, end, second, end2)) {
        return fail(end, "expected an imaginary part");
    }
    if (end2 + 1 != text.size() || text[end2] != 'i') {
        return fail(end2, "imaginary part must end with 'i'");
    }
    return {first, second};
}

std::vector<std::pair<std::string, std::size_t>> split_commas(const std::string &text, std::size_t offset) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        out.emplace_back(text.substr(start, comma - start), offset + start);
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

}  // namespace

Complex parse_complex(std::string_view text) {
    std::string s(text);
    return parse_complex_in(s, s, 0);
}

Ket parse_state_spec(std::string_view spec) {
    std::string s(spec);
    BellStates bell = bell_states();
    if (s == "singlet" || s == "psi-") {
        return bell.psi_minus;
    }
    if (s == "psi+") {
        return bell.psi_plus;
    }
    if (s == "phi+") {
        return bell.phi_plus;
    }
    if (s == "phi-") {
        return bell.phi_minus;
    }
    const std::string basis_prefix = "basis:";
    if (s.rfind(basis_prefix, 0) == 0) {
        std::string labels = s.substr(basis_prefix.size());
        if (labels.empty()) {
            throw SpecError(s, basis_prefix.size(), "expected '+'/'-' labels");
        }
        for (std::size_t i = 0; i < labels.size(); i++) {
            if (labels[i] != '+' && labels[i] != '-') {
                throw SpecError(s, basis_prefix.size() + i, "basis labels must be '+' or '-'");
            }
        }
        return Ket::basis(labels);
    }
    const std::string amps_prefix = "amps:";
    if (s.rfind(amps_prefix, 0) == 0) {
        std::vector<Complex> amplitudes;
        for (const auto &[item, pos] : split_commas(s.substr(amps_prefix.size()), amps_prefix.size())) {
            amplitudes.push_back(parse_complex_in(item, s, pos));
        }
        std::size_t n = amplitudes.size();
        if (n < 2 || (n & (n - 1)) != 0) {
            throw SpecError(s, amps_prefix.size(), "amplitude count must be a power of two >= 2");
        }
        return Ket::from_amplitudes(ComplexVector(std::move(amplitudes)));
    }
    throw SpecError(s, 0, "expected singlet, psi-, psi+, phi-, phi+, basis:<labels> or amps:<list>");
}

Observable parse_local_observable(std::string_view spec) {
    std::string s(spec);
    if (s.size() == 1) {
        try {
            return pauli(parse_axis(s[0]));
        } catch (const std::invalid_argument &) {
            throw SpecError(s, 0, "expected x, y, z or diag:<v1>,<v2>");
        }
    }
    const std::string prefix = "diag:";
    if (s.rfind(prefix, 0) == 0) {
        auto items = split_commas(s.substr(prefix.size()), prefix.size());
        if (items.size() != 2) {
            throw SpecError(s, prefix.size(), "diag needs exactly two values");
        }
        double values[2];
        for (std::size_t k = 0; k < 2; k++) {
            std::size_t end = 0;
            const auto &[item, pos] = items[k];
            if (!parse_double_prefix(item, 0, values[k], end) || end != item.size()) {
                throw SpecError(s, pos + (end == 0 ? 0 : end), "expected a real number");
            }
        }
        return Observable({{values[0], 0.0}, {0.0, values[1]}},
                          "diag(" + format_number(values[0]) + "," + format_number(values[1]) + ")");
    }
    throw SpecError(s, 0, "expected x, y, z or diag:<v1>,<v2>");
}

std::pair<Observable, Observable> parse_axis_pair(std::string_view spec) {
    std::string s(spec);
    for (std::size_t i = 0; i < s.size() && i < 2; i++) {
        if (s[i] != 'x' && s[i] != 'y' && s[i] != 'z') {
            throw SpecError(s, i, "expected an axis letter x, y or z");
        }
    }
    if (s.size() != 2) {
        throw SpecError(s, std::min<std::size_t>(s.size(), 2), "expected exactly two axis letters, e.g. zz");
    }
    return {pauli(parse_axis(s[0])), pauli(parse_axis(s[1]))};
}

// ---------------------------------------------------------------------------
// Commands

namespace {

constexpr double kSigmaBand = 3.0;

std::int64_t as_int(std::uint64_t v) { return static_cast<std::int64_t>(v); }

std::string particle_text(std::pair<int, int> p) { return std::to_string(p.first) + "," + std::to_string(p.second); }

// Empirical frequency table with 3-sigma binomial bands around the exact
// probabilities.
Table frequency_table(const std::string &name, const std::string &key_column, const std::vector<std::string> &keys,
                      const std::vector<double> &probabilities, const std::vector<std::uint64_t> &counts,
                      std::uint64_t trials, bool &all_within) {
    Table t{name, {key_column, "probability", "count", "frequency", "band_3sigma", "within_band"}, {}, {}};
    t.distribution_columns = {"probability", "frequency"};
    all_within = true;
    for (std::size_t i = 0; i < keys.size(); i++) {
        double p = probabilities[i];
        double freq = static_cast<double>(counts[i]) / static_cast<double>(trials);
        double band = kSigmaBand * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
        bool within = std::abs(freq - p) <= band + 1e-15;
        all_within = all_within && within;
        t.rows.push_back({keys[i], p, as_int(counts[i]), freq, band, within});
    }
    return t;
}

const Observable &sx() {
    static const Observable o = pauli(Axis::x);
    return o;
}

const Observable &sz() {
    static const Observable o = pauli(Axis::z);
    return o;
}

}  // namespace

ReportDocument cmd_distribution(const DistributionOptions &options) {
    Ket psi = parse_state_spec(options.state);
    auto [left, right] = parse_axis_pair(options.obs);
    int n = psi.nparticles();
    auto [p1, p2] = options.particles;
    if (p1 < 1 || p1 > n || p2 < 1 || p2 > n || p1 == p2) {
        throw std::invalid_argument("--particles " + particle_text(options.particles) + " does not name two distinct "
                                    "particles of the " + std::to_string(n) + "-particle state");
    }
    if (options.trials > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument("--trials exceeds 2^32 - 1");
    }
    Subsystems particles{p1 - 1, p2 - 1};

    ReportDocument doc;
    doc.scenario = "distribution";
    doc.semantics = std::string(semantics_name(options.semantics));
    doc.parameters = {
        {"state", options.state},
        {"state_amplitudes", format_ket(psi)},
        {"obs", left.name() + "(x)" + right.name()},
        {"particles", particle_text(options.particles)},
    };
    if (options.trials > 0) {
        doc.parameters.push_back({"trials", as_int(options.trials)});
        doc.parameters.push_back({"seed", as_int(options.seed)});
    }

    auto records = exact_distribution(psi, left, right, options.semantics, particles);
    Table exact{"exact_distribution", {"outcome", "probability", "fidelity_with_input", "post_state"}, {}, {}};
    exact.distribution_columns = {"probability"};
    double total = 0.0;
    for (const MeasurementRecord &r : records) {
        exact.rows.push_back({r.outcome.label(), r.probability, fidelity(r.post_state, psi), format_ket(r.post_state)});
        total += r.probability;
    }
    doc.tables.push_back(std::move(exact));

    Section diag{"diagnostics", {}};
    diag.fields.push_back({"outcome_count", as_int(records.size())});
    diag.fields.push_back({"total_probability", total});
    if (n >= 2) {
        diag.fields.push_back({"input_schmidt_rank_cut1", std::int64_t{schmidt_rank(psi, 1)}});
    }
    bool non_demolition = records.size() == 1 && fidelity(records.front().post_state, psi) > 1.0 - 1e-10;
    diag.fields.push_back({"non_demolition", non_demolition});
    doc.sections.push_back(std::move(diag));

    if (options.trials > 0) {
        std::vector<double> probabilities;
        std::vector<std::string> keys;
        for (const MeasurementRecord &r : records) {
            probabilities.push_back(r.probability);
            keys.push_back(r.outcome.label());
        }
        std::vector<std::uint64_t> counts(records.size(), 0);
        for (std::uint64_t trial = 0; trial < options.trials; trial++) {
            CounterRng rng(options.seed, stream_id(StreamDomain::measurement, static_cast<std::uint32_t>(trial)));
            counts[pick_branch(probabilities, rng.uniform())]++;
        }
        bool all_within = true;
        doc.tables.push_back(frequency_table("empirical_frequencies", "outcome", keys, probabilities, counts,
                                             options.trials, all_within));
        doc.sections.push_back(Section{"sampling", {{"all_within_3sigma", all_within}}});
    }
    return doc;
}

ReportDocument cmd_commutators() {
    ReportDocument doc;
    doc.scenario = "commutators";
    doc.semantics = "luders,local-joint";
    Ket singlet = bell_states().psi_minus;
    doc.parameters = {{"state", std::string("singlet")}, {"order_a", std::string("zz-then-xx")},
                      {"order_b", std::string("xx-then-zz")}};

    ComplexMatrix zz = kron(sz().matrix(), sz().matrix());
    ComplexMatrix xx = kron(sx().matrix(), sx().matrix());
    ComplexMatrix zx = kron(sz().matrix(), sx().matrix());
    ComplexMatrix xz = kron(sx().matrix(), sz().matrix());
    ComplexMatrix c1 = commutator(zz, xx);
    ComplexMatrix c2 = commutator(zx, xz);
    auto exactly_zero = [](const ComplexMatrix &m) {
        return std::all_of(m.entries().begin(), m.entries().end(), [](Complex z) { return z == Complex{0.0, 0.0}; });
    };
    doc.sections.push_back(Section{"matrix_commutators",
                                   {
                                       {"zz_xx_frobenius", frobenius_norm(c1)},
                                       {"zz_xx_exact_zero", exactly_zero(c1)},
                                       {"zx_xz_frobenius", frobenius_norm(c2)},
                                       {"zx_xz_exact_zero", exactly_zero(c2)},
                                   }});

    std::vector<MeasurementStep> z_then_x = {{sz(), sz()}, {sx(), sx()}};
    std::vector<MeasurementStep> x_then_z = {{sx(), sx()}, {sz(), sz()}};
    for (Semantics sem : {Semantics::luders, Semantics::local_joint}) {
        std::string tag = sem == Semantics::luders ? "luders" : "local_joint";
        Ensemble first = channel_ensemble(singlet, z_then_x, sem);
        Ensemble second = channel_ensemble(singlet, x_then_z, sem);
        EnsembleComparison cmp = ensembles_equal(first, second, 1e-10);
        doc.sections.push_back(Section{tag + "_channel_order",
                                       {
                                           {"trajectories_zz_then_xx", as_int(first.members().size())},
                                           {"trajectories_xx_then_zz", as_int(second.members().size())},
                                           {"mixture_distance", cmp.mixture_distance},
                                           {"mixtures_equal", cmp.equal},
                                           {"shared_final_states", as_int(cmp.shared_members)},
                                           {"final_states_only_zz_then_xx", as_int(cmp.only_first)},
                                           {"final_states_only_xx_then_zz", as_int(cmp.only_second)},
                                           {"supports_disjoint", cmp.disjoint_supports()},
                                       }});
        for (const auto &[order, ensemble] : {std::pair{std::string("zz_then_xx"), first.merged()},
                                              std::pair{std::string("xx_then_zz"), second.merged()}}) {
            Table t{tag + "_" + order + "_final_states", {"state", "weight"}, {}, {"weight"}};
            for (const EnsembleMember &m : ensemble.members()) {
                t.rows.push_back({format_ket(m.state), m.weight});
            }
            doc.tables.push_back(std::move(t));
        }
    }
    return doc;
}

namespace {

void add_refusal(ReportDocument &doc, const SemanticsRefusal &refusal) {
    doc.sections.push_back(Section{"semantics_refusal",
                                   {
                                       {"reason_code", refusal.reason_code},
                                       {"message", refusal.message},
                                       {"singlet_zz_luders_post_fidelity", refusal.luders_singlet_fidelity},
                                       {"singlet_zz_local_joint_best_post_fidelity",
                                        refusal.local_joint_best_singlet_fidelity},
                                       {"singlet_zz_local_joint_branches", std::int64_t{refusal.local_joint_branch_count}},
                                       {"matrix_commutator_zz_xx_frobenius", refusal.matrix_commutator_norm},
                                       {"channel_order_supports_disjoint", refusal.channel_order_supports_disjoint},
                                       {"channel_order_mixture_distance", refusal.channel_order_mixture_distance},
                                   }});
    Table t{"nearest_experiment_zz_particles_1_2", {"outcome", "probability", "post_state"}, {}, {"probability"}};
    for (const MeasurementRecord &r : refusal.nearest_experiment) {
        t.rows.push_back({r.outcome.label(), r.probability, format_ket(r.post_state)});
    }
    doc.tables.push_back(std::move(t));
}

}  // namespace

ReportDocument cmd_teleport(const TeleportOptions &options) {
    std::vector<InputState> inputs;
    if (options.random > 0) {
        if (options.a || options.b) {
            throw std::invalid_argument("--random cannot be combined with --a/--b");
        }
        for (std::uint32_t i = 0; i < options.random; i++) {
            CounterRng rng(options.seed, stream_id(StreamDomain::input_state, i));
            inputs.push_back(InputState::random(rng));
        }
    } else {
        if (!options.a || !options.b) {
            throw std::invalid_argument("teleport needs --a and --b, or --random N");
        }
        inputs.push_back(InputState::make(parse_complex(*options.a), parse_complex(*options.b)));
    }
    if (options.trials == 0) {
        throw std::invalid_argument("--trials must be positive");
    }

    ReportDocument doc;
    doc.parameters.push_back({"inputs", options.random > 0 ? "random:" + std::to_string(options.random)
                                                           : format_ket(inputs.front().ket())});
    doc.parameters.push_back({"seed", as_int(options.seed)});

    if (options.naive) {
        doc.scenario = "teleport-naive";
        doc.semantics = "none";
        doc.parameters.push_back({"reference_form", std::string("a|+>_1 (x) phi-_23 + b|->_1 (x) psi-_23")});
        Table t{"naive_path",
                {"input", "a", "b", "state", "identity_check_distance", "reference_form_distance",
                 "reference_form_fidelity", "negated_phi_form_distance", "particle3_fidelity"},
                {},
                {}};
        double worst_identity = 0.0;
        double worst_reference = 0.0;
        double worst_negated = 0.0;
        double fidelity_sum = 0.0;
        for (std::size_t i = 0; i < inputs.size(); i++) {
            NaivePathResult r = naive_path(inputs[i]);
            double ref_fid = fidelity(r.state, naive_reference_form(inputs[i]));
            t.rows.push_back({as_int(i), format_complex(inputs[i].a), format_complex(inputs[i].b),
                              format_ket(r.state), r.identity_check_distance, r.reference_form_distance, ref_fid,
                              r.negated_phi_form_distance, r.particle3_fidelity});
            worst_identity = std::max(worst_identity, r.identity_check_distance);
            worst_reference = std::max(worst_reference, r.reference_form_distance);
            worst_negated = std::max(worst_negated, r.negated_phi_form_distance);
            fidelity_sum += r.particle3_fidelity;
        }
        doc.sections.push_back(Section{"naive_summary",
                                       {
                                           {"inputs", as_int(inputs.size())},
                                           {"identity_check_max_distance", worst_identity},
                                           {"identity_check_passed", worst_identity < 1e-12},
                                           {"reference_form_max_distance", worst_reference},
                                           {"reference_form_matches_all", worst_reference < 1e-12},
                                           {"negated_phi_form_max_distance", worst_negated},
                                           {"mean_particle3_fidelity", fidelity_sum / static_cast<double>(inputs.size())},
                                       }});
        doc.tables.push_back(std::move(t));
        return doc;
    }

    doc.scenario = "teleport";
    doc.semantics = std::string(semantics_name(options.semantics));
    doc.parameters.push_back({"trials_per_input", as_int(options.trials)});
    doc.parameters.push_back(
        {"force_branch", options.force_branch ? std::string(bell_label_name(*options.force_branch)) : "none"});

    Table trials{"trials",
                 {"trial", "a", "b", "branch", "bits", "correction", "branch_probability", "fidelity",
                  "final_particle3"},
                 {},
                 {}};
    std::vector<double> exact_branch(4, 0.0);
    std::vector<std::uint64_t> counts(4, 0);
    double min_fidelity = 1.0;
    double fidelity_sum = 0.0;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < inputs.size(); i++) {
        for (const BellCollapse &c : bell_branch_distribution(prepare(inputs[i]))) {
            exact_branch[static_cast<std::size_t>(c.branch)] += c.probability / static_cast<double>(inputs.size());
        }
        for (std::uint32_t t = 0; t < options.trials; t++) {
            std::uint64_t index = i * options.trials + t;
            if (index > std::numeric_limits<std::uint32_t>::max()) {
                throw std::invalid_argument("too many trials for 32-bit stream ids");
            }
            CounterRng rng(options.seed, stream_id(StreamDomain::measurement, static_cast<std::uint32_t>(index)));
            TeleportResult result = run_full(inputs[i], options.semantics, rng, options.force_branch);
            if (const auto *refusal = std::get_if<SemanticsRefusal>(&result)) {
                add_refusal(doc, *refusal);
                return doc;
            }
            const TeleportReport &r = std::get<TeleportReport>(result);
            trials.rows.push_back({as_int(index), format_complex(inputs[i].a), format_complex(inputs[i].b),
                                   std::string(bell_label_name(r.branch)), r.classical_bits.str(),
                                   std::string(correction_name(r.correction)), r.branch_probability, r.fidelity,
                                   format_ket(r.final_particle3)});
            counts[static_cast<std::size_t>(r.branch)]++;
            min_fidelity = std::min(min_fidelity, r.fidelity);
            fidelity_sum += r.fidelity;
            total++;
        }
    }

    doc.sections.push_back(Section{"aggregate",
                                   {
                                       {"trials", as_int(total)},
                                       {"min_fidelity", min_fidelity},
                                       {"mean_fidelity", fidelity_sum / static_cast<double>(total)},
                                       {"all_fidelities_unity", min_fidelity > 1.0 - 1e-10},
                                   }});
    if (!options.force_branch) {
        std::vector<std::string> keys;
        for (BellLabel label : kBellBranches) {
            keys.emplace_back(bell_label_name(label));
        }
        bool all_within = true;
        doc.tables.push_back(frequency_table("branch_frequencies", "branch", keys, exact_branch, counts, total,
                                             all_within));
        doc.sections.back().fields.push_back({"branch_frequencies_within_3sigma", all_within});
    }
    doc.tables.push_back(std::move(trials));
    return doc;
}

namespace {

std::pair<double, double> parse_coefficients(const std::string &spec) {
    auto items = split_commas(spec, 0);
    if (items.size() != 2) {
        throw SpecError(spec, 0, "expected two comma-separated coefficients cx,cz");
    }
    double values[2];
    for (std::size_t k = 0; k < 2; k++) {
        std::size_t end = 0;
        const auto &[item, pos] = items[k];
        if (!parse_double_prefix(item, 0, values[k], end) || end != item.size()) {
            throw SpecError(spec, pos + end, "expected a real number");
        }
    }
    return {values[0], values[1]};
}

}  // namespace

ReportDocument cmd_degeneracy(const DegeneracyOptions &options) {
    int modes = (options.obs ? 1 : 0) + (options.left || options.right ? 1 : 0) + (options.bell_op ? 1 : 0);
    if (modes != 1) {
        throw std::invalid_argument("degeneracy needs exactly one of --obs, --left/--right, --bell-op");
    }
    ReportDocument doc;
    doc.scenario = "degeneracy";
    doc.semantics = "luders";

    if (options.bell_op) {
        auto [cx, cz] = parse_coefficients(*options.bell_op);
        Observable op = bell_operator(cx, cz);
        doc.parameters = {{"bell_op", *options.bell_op}, {"operator", op.name()}};
        Table states{"bell_states", {"state", "expectation", "residual", "is_eigenvector"}, {}, {}};
        bool all_eigen = true;
        BellStates bell = bell_states();
        for (const auto &[name, ket] : {std::pair{"psi+", bell.psi_plus}, std::pair{"psi-", bell.psi_minus},
                                        std::pair{"phi+", bell.phi_plus}, std::pair{"phi-", bell.phi_minus}}) {
            ComplexVector applied = op.matrix() * ket.vector();
            double expectation = inner(ket.vector(), applied).real();
            double residual = distance(applied, Complex{expectation, 0.0} * ket.vector());
            bool eigen = residual < 1e-10;
            all_eigen = all_eigen && eigen;
            states.rows.push_back({std::string(name), expectation, residual, eigen});
        }
        Table spectrum{"spectrum", {"eigenvalue", "multiplicity"}, {}, {}};
        for (const EigenGroup &g : hermitian_eig(op.matrix()).groups) {
            spectrum.rows.push_back({g.eigenvalue, std::int64_t{g.multiplicity}});
        }
        doc.sections.push_back(Section{"summary",
                                       {
                                           {"bell_states_are_matrix_eigenvectors", all_eigen},
                                           {"local_joint_analysis",
                                            std::string("undefined: pair-valued outcomes carry no algebra for sums "
                                                        "of product observables; matrix analysis only")},
                                       }});
        doc.tables.push_back(std::move(states));
        doc.tables.push_back(std::move(spectrum));
        return doc;
    }

    std::optional<std::pair<Observable, Observable>> pair;
    if (options.obs) {
        pair = parse_axis_pair(*options.obs);
        doc.parameters = {{"obs", *options.obs}};
    } else {
        if (!options.left || !options.right) {
            throw std::invalid_argument("--left and --right must be given together");
        }
        pair.emplace(parse_local_observable(*options.left), parse_local_observable(*options.right));
        doc.parameters = {{"left", *options.left}, {"right", *options.right}};
    }
    DegeneracyReport report = detect_correlation_degeneracy(pair->first, pair->second);
    ComplexMatrix full = kron(pair->first.matrix(), pair->second.matrix());
    auto product_ket = [&](const ProductEigenvector &m) {
        return format_ket(kron_vec(report.left_eigenvectors[static_cast<std::size_t>(m.left_index)],
                                   report.right_eigenvectors[static_cast<std::size_t>(m.right_index)]));
    };

    Table spectrum{"product_spectrum", {"eigenvector", "left", "right", "product"}, {}, {}};
    for (const ProductEigenvector &m : report.product_spectrum) {
        spectrum.rows.push_back({product_ket(m), m.left_value, m.right_value, m.product()});
    }
    Table groups{"degenerate_groups",
                 {"eigenvalue", "multiplicity", "members", "witness", "witness_schmidt_rank", "witness_residual"},
                 {},
                 {}};
    for (const DegeneracyGroup &g : report.groups) {
        std::string members;
        for (const ProductEigenvector &m : g.members) {
            members += (members.empty() ? "" : "; ") + product_ket(m);
        }
        ComplexVector residual = full * g.witness.vector() - Complex{g.eigenvalue, 0.0} * g.witness.vector();
        groups.rows.push_back({g.eigenvalue, as_int(g.members.size()), members, format_ket(g.witness),
                               std::int64_t{schmidt_rank(g.witness, 1)}, residual.norm()});
    }
    doc.sections.push_back(Section{"summary",
                                   {
                                       {"observable", report.observable_name},
                                       {"degenerate_groups", as_int(report.groups.size())},
                                   }});
    doc.tables.push_back(std::move(spectrum));
    doc.tables.push_back(std::move(groups));
    return doc;
}

// ---------------------------------------------------------------------------
// Entry point

namespace {

std::pair<int, int> parse_particles(const std::string &text) {
    auto items = split_commas(text, 0);
    if (items.size() != 2) {
        throw SpecError(text, 0, "expected two particle numbers, e.g. 1,2");
    }
    int values[2];
    for (std::size_t k = 0; k < 2; k++) {
        const auto &[item, pos] = items[k];
        if (item.empty() || item.size() > 2 ||
            !std::all_of(item.begin(), item.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw SpecError(text, pos, "expected a particle number");
        }
        values[k] = std::stoi(item);
    }
    return {values[0], values[1]};
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream &out, std::ostream &err) {
    CLI::App app{"jointmeas: joint measurement semantics on spin systems", "jointmeas"};
    app.require_subcommand(1);

    std::string format = "text";
    auto add_format = [&](CLI::App *sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };
    std::string semantics_text = "luders";
    const auto semantics_check = CLI::IsMember({"luders", "local-joint"});

    DistributionOptions dist;
    std::string particles_text = "1,2";
    CLI::App *dist_cmd = app.add_subcommand("distribution", "Outcome distribution of a joint measurement");
    dist_cmd->add_option("--state", dist.state, "singlet|psi-|psi+|phi-|phi+|basis:<+->|amps:<c1>,<c2>,...")
        ->required();
    dist_cmd->add_option("--obs", dist.obs, "Two axis letters, e.g. zz")->required();
    dist_cmd->add_option("--semantics", semantics_text, "luders or local-joint")->check(semantics_check);
    dist_cmd->add_option("--particles", particles_text, "Measured particles, 1-based (default 1,2)");
    dist_cmd->add_option("--trials", dist.trials, "Monte Carlo trials (0 = exact table only)");
    dist_cmd->add_option("--seed", dist.seed, "Philox seed");
    add_format(dist_cmd);

    CLI::App *comm_cmd = app.add_subcommand("commutators", "Matrix commutator versus channel-order comparison");
    add_format(comm_cmd);

    TeleportOptions tel;
    std::string a_text, b_text, force_text;
    CLI::App *tel_cmd = app.add_subcommand("teleport", "Teleportation protocol");
    tel_cmd->add_option("--a", a_text, "Amplitude of |+> (complex, e.g. 0.6 or 0.6+0.8i)");
    tel_cmd->add_option("--b", b_text, "Amplitude of |->");
    tel_cmd->add_option("--random", tel.random, "Use N Haar-random inputs instead of --a/--b");
    tel_cmd->add_option("--semantics", semantics_text, "luders or local-joint")->check(semantics_check);
    tel_cmd->add_option("--seed", tel.seed, "Philox seed");
    tel_cmd->add_option("--trials", tel.trials, "Trials per input");
    tel_cmd->add_option("--force-branch", force_text, "Force a Bell branch: psi-|psi+|phi-|phi+")
        ->check(CLI::IsMember({"psi-", "psi+", "phi-", "phi+"}));
    tel_cmd->add_flag("--naive", tel.naive, "Conditional spin flip without the Bell reduction");
    add_format(tel_cmd);

    DegeneracyOptions deg;
    std::string obs_text, left_text, right_text, bell_text;
    CLI::App *deg_cmd = app.add_subcommand("degeneracy", "Correlation degeneracy of a product observable");
    deg_cmd->add_option("--obs", obs_text, "Two axis letters, e.g. zz");
    deg_cmd->add_option("--left", left_text, "Left observable: x|y|z|diag:<v1>,<v2>");
    deg_cmd->add_option("--right", right_text, "Right observable: x|y|z|diag:<v1>,<v2>");
    deg_cmd->add_option("--bell-op", bell_text, "Coefficients cx,cz of cx sx(x)sx + cz sz(x)sz");
    add_format(deg_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        ReportDocument doc;
        if (dist_cmd->parsed()) {
            dist.semantics = parse_semantics(semantics_text);
            dist.particles = parse_particles(particles_text);
            doc = cmd_distribution(dist);
        } else if (comm_cmd->parsed()) {
            doc = cmd_commutators();
        } else if (tel_cmd->parsed()) {
            tel.semantics = parse_semantics(semantics_text);
            if (tel_cmd->count("--a") > 0) {
                tel.a = a_text;
            }
            if (tel_cmd->count("--b") > 0) {
                tel.b = b_text;
            }
            if (!force_text.empty()) {
                tel.force_branch = parse_bell_label(force_text);
            }
            doc = cmd_teleport(tel);
        } else {
            if (deg_cmd->count("--obs") > 0) {
                deg.obs = obs_text;
            }
            if (deg_cmd->count("--left") > 0) {
                deg.left = left_text;
            }
            if (deg_cmd->count("--right") > 0) {
                deg.right = right_text;
            }
            if (deg_cmd->count("--bell-op") > 0) {
                deg.bell_op = bell_text;
            }
            doc = cmd_degeneracy(deg);
        }
        validate(doc);
        out << (format == "json" ? render_json(doc) : render_text(doc));
        return 0;
    } catch (const InvariantViolation &e) {
        err << "internal invariant violated: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace jointmeas
