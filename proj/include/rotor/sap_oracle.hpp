#ifndef ROTOR_SAP_ORACLE_HPP
#define ROTOR_SAP_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "rotor/engine.hpp"

namespace rotor {

struct SapOptions {
    /// Largest firing count enumerated per vertex.
    std::int64_t bound = 6;
    /// Refuse to run when (bound+1)^|V'| exceeds this.
    std::uint64_t max_evaluations = 5'000'000;
    /// Only compare outcomes whose final rotors are acyclic. Turning this off
    /// removes the hypothesis that makes firing vectors unique.
    bool require_acyclic = true;
    /// Also check the must-cycle and fireless-monotonicity lemmas.
    bool check_lemmas = true;
};

enum class SapViolationKind {
    /// Two distinct u with equal chips on V' and (when required) acyclic rotors.
    Uniqueness,
    /// u != 0 returning the chips unchanged with acyclic rotors.
    MustCycle,
    /// rho_1 acyclic and sigma_2 <= sigma_1 on V', yet u_1 > u_2 somewhere.
    Fireless,
};

struct SapViolation {
    SapViolationKind kind;
    FiringVector first;
    FiringVector second;
};

struct SapCertificate {
    bool passed = true;
    std::uint64_t evaluated = 0;
    std::uint64_t acyclic_outcomes = 0;
    std::optional<SapViolation> violation;
};

/// (bound+1)^|V'|, saturating at UINT64_MAX.
std::uint64_t sap_search_size(const DirectedMultigraph& graph, std::int64_t bound);

/**
 * Exhaustive check of the strong abelian property on a small instance.
 *
 * Every firing vector u with 0 <= u(v) <= bound is applied to `state`.
 * Outcomes with acyclic rotors are grouped by their chips on the non-sinks
 * and each group must contain a single u. Throws PreconditionError if the
 * search space exceeds options.max_evaluations.
 */
SapCertificate sap_bruteforce_oracle(const DirectedMultigraph& graph, const State& state,
                                     const SapOptions& options);

std::string to_string(SapViolationKind kind);

}  // namespace rotor

#endif  // ROTOR_SAP_ORACLE_HPP
