#ifndef ROTOR_CLI_HPP
#define ROTOR_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rotor/aggregation.hpp"
#include "rotor/random_instances.hpp"
#include "rotor/sap_oracle.hpp"

namespace rotor::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the `rotor` executable and the tests. `args`
/// excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct OdometerCheckRow {
    int n = 0;
    bool measured_match = false;
    bool chips_all_one = false;
    bool rotors_acyclic = false;
    bool rotors_predicted = false;
    bool popping_match = false;

    bool passed() const {
        return measured_match && chips_all_one && rotors_acyclic && rotors_predicted && popping_match;
    }
};

struct OdometerCheckFailure {
    std::string check;
    int n = 0;
    lattice::LatticePoint where;
    std::int64_t found = 0;
    std::int64_t expected = 0;
};

struct OdometerCheckReport {
    std::vector<OdometerCheckRow> rows;
    std::optional<OdometerCheckFailure> failure;

    bool passed() const { return !failure.has_value(); }
};

/**
 * For n = 1..n_max: the measured odometer of one modified aggregation run at
 * each checkpoint, F^u from (rho_0, |D_n| chips at o) giving one chip per
 * site with acyclic rotors u mod 4, and cycle popping after F^{u'_n}
 * unfiring exactly u'_n - u. Stops at the first failing n.
 */
OdometerCheckReport check_odometer(int n_max,
                                   const aggregation::OdometerFormula& formula = lattice::odometer_formula);

struct SapTestReport {
    std::size_t trials = 0;
    std::uint64_t evaluated = 0;
    std::optional<std::size_t> failing_trial;
    std::optional<Instance> counterexample;
    std::optional<SapCertificate> certificate;

    bool passed() const { return !failing_trial.has_value(); }
};

/// Runs the brute-force oracle on `trials` seeded random instances.
SapTestReport sap_test(std::size_t trials, std::size_t max_vertices, std::int64_t bound,
                       std::uint64_t seed);

}  // namespace rotor::cli

#endif  // ROTOR_CLI_HPP
