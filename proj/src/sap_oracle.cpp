#include "rotor/sap_oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

namespace rotor {

std::uint64_t sap_search_size(const DirectedMultigraph& graph, std::int64_t bound) {
    if (bound < 0) {
        throw PreconditionError("firing bound must be nonnegative");
    }
    const auto base = static_cast<std::uint64_t>(bound) + 1;
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < graph.non_sinks().size(); ++i) {
        if (size > std::numeric_limits<std::uint64_t>::max() / base) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        size *= base;
    }
    return size;
}

std::string to_string(SapViolationKind kind) {
    switch (kind) {
        case SapViolationKind::Uniqueness:
            return "uniqueness";
        case SapViolationKind::MustCycle:
            return "must-cycle";
        case SapViolationKind::Fireless:
            return "fireless";
    }
    return "unknown";
}

namespace {

// Outcomes are stored row-major: row i holds u and sigma|V' for the i-th
// enumerated firing vector, indexed by position in graph.non_sinks().
struct OutcomeTable {
    std::size_t width = 0;
    std::vector<std::int64_t> firing;
    std::vector<std::int64_t> chips;
    std::vector<std::uint8_t> acyclic;
    std::vector<std::uint8_t> unchanged;

    std::size_t size() const { return acyclic.size(); }
    const std::int64_t* u(std::size_t i) const { return firing.data() + i * width; }
    const std::int64_t* sigma(std::size_t i) const { return chips.data() + i * width; }
};

FiringVector expand(const DirectedMultigraph& graph, const OutcomeTable& table, std::size_t row) {
    FiringVector u = zero_firing(graph);
    const auto& non_sinks = graph.non_sinks();
    for (std::size_t k = 0; k < table.width; ++k) {
        u.count[non_sinks[k]] = table.u(row)[k];
    }
    return u;
}

OutcomeTable enumerate(const DirectedMultigraph& graph, const State& state, std::int64_t bound) {
    const auto& non_sinks = graph.non_sinks();
    OutcomeTable table;
    table.width = non_sinks.size();

    FiringVector u = zero_firing(graph);
    State scratch;
    while (true) {
        scratch = state;
        apply_firing_vector(graph, scratch, u);
        for (Vertex v : non_sinks) {
            table.firing.push_back(u.count[v]);
            table.chips.push_back(scratch.chips.chips[v]);
        }
        table.acyclic.push_back(is_acyclic(graph, scratch.rotors) ? 1 : 0);
        table.unchanged.push_back(scratch.chips == state.chips ? 1 : 0);

        // Mixed-radix increment over the non-sinks.
        std::size_t k = 0;
        while (k < non_sinks.size() && u.count[non_sinks[k]] == bound) {
            u.count[non_sinks[k]] = 0;
            ++k;
        }
        if (k == non_sinks.size()) {
            break;
        }
        ++u.count[non_sinks[k]];
    }
    return table;
}

bool dominated(const std::int64_t* lower, const std::int64_t* upper, std::size_t width) {
    for (std::size_t k = 0; k < width; ++k) {
        if (lower[k] > upper[k]) {
            return false;
        }
    }
    return true;
}

}  // namespace

SapCertificate sap_bruteforce_oracle(const DirectedMultigraph& graph, const State& state,
                                     const SapOptions& options) {
    validate(graph, state);
    const std::uint64_t search = sap_search_size(graph, options.bound);
    if (search > options.max_evaluations) {
        throw PreconditionError("search space of " + std::to_string(search) +
                                " firing vectors exceeds the limit of " +
                                std::to_string(options.max_evaluations));
    }

    const OutcomeTable table = enumerate(graph, state, options.bound);
    const std::size_t width = table.width;

    SapCertificate certificate;
    certificate.evaluated = table.size();
    certificate.acyclic_outcomes = static_cast<std::uint64_t>(
        std::count(table.acyclic.begin(), table.acyclic.end(), std::uint8_t{1}));

    auto fail = [&](SapViolationKind kind, std::size_t a, std::size_t b) {
        certificate.passed = false;
        certificate.violation = SapViolation{kind, expand(graph, table, a), expand(graph, table, b)};
        return certificate;
    };

    std::map<std::vector<std::int64_t>, std::size_t> first_by_chips;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (options.require_acyclic && !table.acyclic[i]) {
            continue;
        }
        std::vector<std::int64_t> key(table.sigma(i), table.sigma(i) + width);
        const auto [it, inserted] = first_by_chips.emplace(std::move(key), i);
        if (!inserted) {
            return fail(SapViolationKind::Uniqueness, it->second, i);
        }
    }

    if (!options.check_lemmas) {
        return certificate;
    }

    // Row 0 is u = 0.
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (table.acyclic[i] && table.unchanged[i]) {
            return fail(SapViolationKind::MustCycle, i, 0);
        }
    }

    // Rows sorted by total chips on V': sigma_2 <= sigma_1 forces the totals
    // to be ordered the same way, so each acyclic row only scans a prefix.
    std::vector<std::int64_t> totals(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        totals[i] = std::accumulate(table.sigma(i), table.sigma(i) + width, std::int64_t{0});
    }
    std::vector<std::size_t> order(table.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return totals[a] < totals[b]; });

    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!table.acyclic[i]) {
            continue;
        }
        for (std::size_t j : order) {
            if (totals[j] > totals[i]) {
                break;
            }
            if (dominated(table.sigma(j), table.sigma(i), width) &&
                !dominated(table.u(i), table.u(j), width)) {
                return fail(SapViolationKind::Fireless, i, j);
            }
        }
    }
    return certificate;
}

}  // namespace rotor
