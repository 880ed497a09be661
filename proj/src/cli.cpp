#include "rotor/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotor/lattice_io.hpp"
#include "rotor/render.hpp"
#include "rotor/serialization.hpp"

namespace rotor::cli {

using aggregation::AggregationState;
using aggregation::GrowthVariant;
using lattice::DiamondGraph;
using lattice::LatticePoint;

namespace {

std::string describe(LatticePoint p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

// Sends a finished document to --out (atomically) or to the console.
void emit(const std::string& document, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << document;
    } else {
        render::write_file_atomically(out_path, document);
    }
}

std::optional<OdometerCheckFailure> first_difference(const std::string& check, int n,
                                                     const DiamondGraph& diamond,
                                                     const std::vector<std::int64_t>& found,
                                                     const std::vector<std::int64_t>& expected) {
    for (Vertex v = 0; v < diamond.vertex_count(); ++v) {
        if (found[v] != expected[v]) {
            return OdometerCheckFailure{check, n, diamond.point(v), found[v], expected[v]};
        }
    }
    return std::nullopt;
}

std::vector<std::int64_t> widen(const RotorConfiguration& rotors) {
    return {rotors.index.begin(), rotors.index.end()};
}

// --- verify-diamond -------------------------------------------------------

int cmd_verify_diamond(int n_max, const std::string& variant_name, const std::string& format,
                       const std::string& out_path, std::ostream& out, std::ostream& err) {
    const GrowthVariant variant = aggregation::parse_variant(variant_name);
    const auto checkpoints = aggregation::run_checkpoints(n_max, variant);

    std::ostringstream doc;
    if (format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& cp : checkpoints) {
            rows.push_back({{"n", cp.n},
                            {"chips", cp.chips},
                            {"is_diamond", cp.is_diamond},
                            {"odometer_match", cp.odometer_match},
                            {"wall_ms", cp.wall_ms}});
        }
        doc << rows.dump(2) << '\n';
    } else {
        doc << "n,chips,is_diamond,odometer_match,wall_ms\n";
        for (const auto& cp : checkpoints) {
            doc << cp.n << ',' << cp.chips << ',' << (cp.is_diamond ? 1 : 0) << ','
                << (cp.odometer_match ? 1 : 0) << ',' << cp.wall_ms << '\n';
        }
    }
    emit(doc.str(), out_path, out);

    for (const auto& cp : checkpoints) {
        if (!cp.is_diamond || !cp.odometer_match) {
            err << "checkpoint failed at n=" << cp.n << " (chips=" << cp.chips
                << ", occupied=" << cp.occupied << ", is_diamond=" << cp.is_diamond << ")";
            if (cp.mismatch) {
                err << "; odometer differs at " << describe(cp.mismatch->where) << ": measured "
                    << cp.mismatch->measured << ", formula " << cp.mismatch->expected;
            }
            err << '\n';
            return kExitCheckFailed;
        }
    }
    const auto& last = checkpoints.back();
    err << "all " << checkpoints.size() << " checkpoints pass; final cluster D_" << last.n << " with "
        << last.occupied << " sites\n";
    return kExitSuccess;
}

// --- check-odometer -------------------------------------------------------

int cmd_check_odometer(int n_max, const std::string& format, const std::string& out_path,
                       std::ostream& out, std::ostream& err) {
    const OdometerCheckReport report = check_odometer(n_max);
    std::ostringstream doc;
    if (format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : report.rows) {
            rows.push_back({{"n", row.n},
                            {"measured_match", row.measured_match},
                            {"chips_all_one", row.chips_all_one},
                            {"rotors_acyclic", row.rotors_acyclic},
                            {"rotors_predicted", row.rotors_predicted},
                            {"popping_match", row.popping_match}});
        }
        doc << rows.dump(2) << '\n';
    } else {
        doc << "n,measured_match,chips_all_one,rotors_acyclic,rotors_predicted,popping_match\n";
        for (const auto& row : report.rows) {
            doc << row.n << ',' << row.measured_match << ',' << row.chips_all_one << ','
                << row.rotors_acyclic << ',' << row.rotors_predicted << ',' << row.popping_match << '\n';
        }
    }
    emit(doc.str(), out_path, out);

    if (report.failure) {
        const auto& f = *report.failure;
        err << f.check << " check failed at n=" << f.n << ", vertex " << describe(f.where) << ": found "
            << f.found << ", expected " << f.expected << '\n';
        return kExitCheckFailed;
    }
    err << "odometer identities hold for n = 1.." << n_max << '\n';
    return kExitSuccess;
}

// --- render ---------------------------------------------------------------

int cmd_render(int n, const std::string& out_path, std::ostream& err) {
    const AggregationState state =
        aggregation::aggregate(lattice::diamond_size(n), GrowthVariant::Standard);
    render::write_file_atomically(out_path, render::render_ppm(state, n));
    err << "wrote " << out_path << " (" << state.occupied().size() << " occupied sites)\n";
    return kExitSuccess;
}

// --- sap-test -------------------------------------------------------------

int cmd_sap_test(std::size_t trials, std::size_t max_vertices, std::int64_t bound, std::uint64_t seed,
                 std::ostream& out, std::ostream& err) {
    const SapTestReport report = sap_test(trials, max_vertices, bound, seed);
    if (!report.passed()) {
        err << "trial " << *report.failing_trial << " violates the "
            << to_string(report.certificate->violation->kind) << " check\n";
        nlohmann::json dump = {
            {"trial", *report.failing_trial},
            {"instance", to_json(*report.counterexample)},
            {"first", report.certificate->violation->first.count},
            {"second", report.certificate->violation->second.count},
        };
        out << dump.dump(2) << '\n';
        return kExitCheckFailed;
    }
    out << "trials=" << report.trials << " evaluated=" << report.evaluated << " result=pass\n";
    return kExitSuccess;
}

// --- dump -----------------------------------------------------------------

int cmd_dump(int n, const std::string& what, const std::string& format, const std::string& out_path,
             std::ostream& out) {
    const DiamondGraph diamond(n);
    std::string doc;
    if (what == "graph") {
        doc = format == "json" ? lattice::diamond_to_json(diamond).dump(2) + "\n"
                               : lattice::diamond_to_csv(diamond);
    } else {
        const auto records =
            what == "odometer"
                ? lattice::odometer_records(diamond, lattice::odometer_formula(diamond))
                : lattice::rotor_records(diamond, lattice::predicted_final_rotors(diamond));
        doc = format == "json" ? lattice::records_to_json(records).dump(2) + "\n"
                               : lattice::records_to_csv(records);
    }
    emit(doc, out_path, out);
    return kExitSuccess;
}

// --- simulate -------------------------------------------------------------

int cmd_simulate(std::int64_t chips, const std::string& variant_name, const std::string& format,
                 const std::string& out_path, std::ostream& out) {
    const AggregationState state = aggregation::aggregate(chips, aggregation::parse_variant(variant_name));
    int radius = 0;
    for (const auto& p : state.occupied()) {
        radius = std::max(radius, lattice::norm(p));
    }
    if (format == "ppm") {
        if (out_path.empty()) {
            throw PreconditionError("--format ppm needs --out");
        }
        render::write_file_atomically(out_path, render::render_ppm(state, radius));
        return kExitSuccess;
    }
    const bool diamond = aggregation::is_diamond(state, radius);
    std::ostringstream doc;
    if (format == "json") {
        nlohmann::json summary = {{"chips", chips},
                                  {"variant", aggregation::to_string(state.variant())},
                                  {"occupied", state.occupied().size()},
                                  {"radius", radius},
                                  {"is_diamond", diamond}};
        doc << summary.dump(2) << '\n';
    } else {
        doc << "chips,variant,occupied,radius,is_diamond\n"
            << chips << ',' << aggregation::to_string(state.variant()) << ',' << state.occupied().size()
            << ',' << radius << ',' << (diamond ? 1 : 0) << '\n';
    }
    emit(doc.str(), out_path, out);
    return kExitSuccess;
}

}  // namespace

OdometerCheckReport check_odometer(int n_max, const aggregation::OdometerFormula& formula) {
    if (n_max < 1) {
        throw PreconditionError("--n-max must be at least 1");
    }
    OdometerCheckReport report;
    AggregationState modified(lattice::diamond_size(n_max), GrowthVariant::Modified);

    for (int n = 1; n <= n_max; ++n) {
        OdometerCheckRow row;
        row.n = n;
        const DiamondGraph diamond(n);
        const DirectedMultigraph& graph = diamond.graph();
        const FiringVector u = formula(diamond);

        modified.run_to(lattice::diamond_size(n));
        if (const auto mismatch = aggregation::compare_with_formula(modified, n, formula)) {
            report.failure = OdometerCheckFailure{"measured odometer", n, mismatch->where,
                                                  mismatch->measured, mismatch->expected};
        }
        row.measured_match = !report.failure;

        State fired{lattice::initial_rotors(diamond), lattice::origin_chips(diamond)};
        apply_firing_vector(graph, fired, u);
        const std::vector<std::int64_t> ones(graph.vertex_count(), 1);
        auto chips_failure = first_difference("one chip per site", n, diamond, fired.chips.chips, ones);
        row.chips_all_one = !chips_failure;
        row.rotors_acyclic = is_acyclic(graph, fired.rotors);

        RotorConfiguration expected_rotors = lattice::initial_rotors(diamond);
        for (Vertex v : graph.non_sinks()) {
            expected_rotors.index[v] = static_cast<std::uint32_t>(u.count[v] % 4);
        }
        auto rotor_failure = first_difference("final rotors", n, diamond, widen(fired.rotors),
                                              widen(expected_rotors));
        row.rotors_predicted = !rotor_failure;

        const FiringVector unreduced = lattice::unreduced_odometer(diamond);
        State popped{lattice::initial_rotors(diamond), lattice::origin_chips(diamond)};
        apply_firing_vector(graph, popped, unreduced);
        std::optional<OdometerCheckFailure> pop_failure;
        try {
            const CyclePopResult pops = pop_cycles(graph, popped);
            std::vector<std::int64_t> expected_unfired(graph.vertex_count(), 0);
            for (Vertex v : graph.non_sinks()) {
                expected_unfired[v] = unreduced.count[v] - u.count[v];
            }
            pop_failure = first_difference("cycle popping", n, diamond, pops.unfired.count, expected_unfired);
            if (!pop_failure) {
                pop_failure = first_difference("popped rotors", n, diamond, widen(popped.rotors),
                                               widen(expected_rotors));
            }
        } catch (const NonTerminationError&) {
            pop_failure = OdometerCheckFailure{"cycle popping (cap exceeded)", n, lattice::kOrigin, 0, 0};
        }
        row.popping_match = !pop_failure;

        if (!report.failure) {
            if (chips_failure) {
                report.failure = chips_failure;
            } else if (!row.rotors_acyclic) {
                report.failure = OdometerCheckFailure{"acyclic rotors", n, lattice::kOrigin, 0, 1};
            } else if (rotor_failure) {
                report.failure = rotor_failure;
            } else if (pop_failure) {
                report.failure = pop_failure;
            }
        }
        report.rows.push_back(row);
        if (report.failure) {
            break;
        }
    }
    return report;
}

SapTestReport sap_test(std::size_t trials, std::size_t max_vertices, std::int64_t bound,
                       std::uint64_t seed) {
    if (max_vertices < 1 || max_vertices > 8) {
        throw PreconditionError("--max-vertices must be between 1 and 8");
    }
    if (bound < 0) {
        throw PreconditionError("--bound must be nonnegative");
    }
    RandomInstanceGenerator generator(seed, {max_vertices, 3, 3});
    SapOptions options;
    options.bound = bound;

    SapTestReport report;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Instance instance = generator.next();
        const SapCertificate certificate = sap_bruteforce_oracle(instance.graph, instance.state, options);
        ++report.trials;
        report.evaluated += certificate.evaluated;
        if (!certificate.passed) {
            report.failing_trial = trial;
            report.counterexample = std::move(instance);
            report.certificate = certificate;
            break;
        }
    }
    return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rotor-router aggregation on the layered square lattice", "rotor"};
    app.require_subcommand(1);

    int n = 0;
    int n_max = 0;
    std::int64_t chips = 0;
    std::string variant = "standard";
    std::size_t trials = 1000;
    std::size_t max_vertices = 6;
    std::int64_t bound = 6;
    std::uint64_t seed = 42;
    std::string out_path;
    std::string format;
    std::string what;

    auto* verify = app.add_subcommand("verify-diamond", "Check A_{2n(n+1)} = D_n at every checkpoint");
    verify->add_option("--n-max", n_max, "Largest radius to reach")->required()->check(CLI::PositiveNumber);
    verify->add_option("--variant", variant)->check(CLI::IsMember({"standard", "modified"}));
    verify->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    verify->add_option("--out", out_path, "Report file (default: stdout)");

    auto* odometer = app.add_subcommand("check-odometer", "Check the closed-form odometer identities");
    odometer->add_option("--n-max", n_max)->required()->check(CLI::PositiveNumber);
    odometer->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    odometer->add_option("--out", out_path);

    auto* render_cmd = app.add_subcommand("render", "Render the final rotors of D_n as a PPM image");
    render_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    render_cmd->add_option("--out", out_path)->required();
    render_cmd->add_option("--format", format)->check(CLI::IsMember({"ppm"}));

    auto* sap = app.add_subcommand("sap-test", "Brute-force strong abelian property check");
    sap->add_option("--trials", trials);
    sap->add_option("--max-vertices", max_vertices)->check(CLI::Range(1, 8));
    sap->add_option("--bound", bound)->check(CLI::NonNegativeNumber);
    sap->add_option("--seed", seed);

    auto* dump = app.add_subcommand("dump", "Write u_n, rho_n or the lattice graph");
    dump->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    dump->add_option("--what", what)->required()->check(CLI::IsMember({"rotors", "odometer", "graph"}));
    dump->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    dump->add_option("--out", out_path);

    auto* simulate = app.add_subcommand("simulate", "Run one aggregation and summarize the cluster");
    simulate->add_option("--chips", chips)->required()->check(CLI::PositiveNumber);
    simulate->add_option("--variant", variant)->check(CLI::IsMember({"standard", "modified"}));
    simulate->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "ppm"}));
    simulate->add_option("--out", out_path);

    std::vector<const char*> argv{"rotor"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitSuccess;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (verify->parsed()) {
            return cmd_verify_diamond(n_max, variant, format.empty() ? "csv" : format, out_path, out, err);
        }
        if (odometer->parsed()) {
            return cmd_check_odometer(n_max, format.empty() ? "csv" : format, out_path, out, err);
        }
        if (render_cmd->parsed()) {
            return cmd_render(n, out_path, err);
        }
        if (sap->parsed()) {
            return cmd_sap_test(trials, max_vertices, bound, seed, out, err);
        }
        if (dump->parsed()) {
            return cmd_dump(n, what, format.empty() ? "json" : format, out_path, out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(chips, variant, format.empty() ? "json" : format, out_path, out);
        }
    } catch (const PreconditionError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitUsage;
}

}  // namespace rotor::cli
