#include "rotor/aggregation.hpp"

#include <chrono>
#include <stdexcept>

namespace rotor::aggregation {

using lattice::DiamondGraph;
using lattice::norm;

std::string to_string(GrowthVariant variant) {
    return variant == GrowthVariant::Standard ? "standard" : "modified";
}

GrowthVariant parse_variant(const std::string& name) {
    if (name == "standard") return GrowthVariant::Standard;
    if (name == "modified") return GrowthVariant::Modified;
    throw PreconditionError("unknown growth variant '" + name + "'");
}

int r_of_m(std::int64_t m) {
    if (m < 0) {
        throw PreconditionError("r_m needs m >= 0");
    }
    int r = 0;
    while (2 * std::int64_t{r} * (r + 1) <= m) {
        ++r;
    }
    return r;
}

AggregationState::AggregationState(std::int64_t capacity, GrowthVariant variant)
    : variant_(variant), capacity_(capacity) {
    if (capacity < 1) {
        throw PreconditionError("aggregation needs at least one chip");
    }
    region_ = std::make_shared<const DiamondGraph>(r_of_m(capacity - 1) + 1);
    rotors_ = lattice::initial_rotors(*region_);
    odometer_ = zero_firing(region_->graph());
    occupied_mask_.assign(region_->vertex_count(), 0);
    occupied_mask_[region_->origin()] = 1;
    occupied_.push_back(lattice::kOrigin);
    stop_.assign(region_->vertex_count(), 1);
    refresh_stop_set();
}

void AggregationState::refresh_stop_set() {
    stop_radius_ = r_of_m(released_) - 1;
    for (Vertex v = 0; v < stop_.size(); ++v) {
        const bool inside = occupied_mask_[v] &&
                            (variant_ == GrowthVariant::Standard ||
                             norm(region_->point(v)) <= stop_radius_);
        stop_[v] = inside ? 0 : 1;
    }
}

LatticePoint AggregationState::release() {
    if (released_ + 1 >= capacity_) {
        throw PreconditionError("aggregation capacity of " + std::to_string(capacity_) +
                                " chips reached");
    }
    if (variant_ == GrowthVariant::Modified && r_of_m(released_) - 1 != stop_radius_) {
        refresh_stop_set();
    }

    Vertex end = 0;
    try {
        end = rotor_walk(region_->graph(), rotors_, region_->origin(), stop_, odometer_);
    } catch (const PreconditionError& e) {
        throw std::logic_error(std::string("walker left the working region: ") + e.what());
    }

    ++released_;
    const LatticePoint p = region_->point(end);
    if (!occupied_mask_[end]) {
        occupied_mask_[end] = 1;
        occupied_.push_back(p);
        if (variant_ == GrowthVariant::Standard || norm(p) <= stop_radius_) {
            stop_[end] = 0;
        }
    }
    return p;
}

void AggregationState::run_to(std::int64_t chips) {
    while (released_ + 1 < chips) {
        release();
    }
}

bool AggregationState::is_occupied(LatticePoint p) const {
    const auto v = region_->find(p);
    return v && occupied_mask_[*v];
}

std::int64_t AggregationState::measured_at(LatticePoint p) const {
    const auto v = region_->find(p);
    return v ? odometer_.count[*v] : 0;
}

AggregationState aggregate(std::int64_t chips, GrowthVariant variant) {
    AggregationState state(chips, variant);
    state.run_to(chips);
    return state;
}

bool is_diamond(const AggregationState& state, int n) {
    if (n < 0) {
        return false;
    }
    const auto& occupied = state.occupied();
    if (static_cast<std::int64_t>(occupied.size()) != lattice::diamond_size(n)) {
        return false;
    }
    // Occupied sites are distinct, so the count plus containment gives equality.
    for (const LatticePoint& p : occupied) {
        if (norm(p) > n) {
            return false;
        }
    }
    return true;
}

std::optional<OdometerMismatch> compare_with_formula(const AggregationState& state, int n,
                                                     const OdometerFormula& formula) {
    const DiamondGraph& region = state.region();
    std::vector<std::int64_t> expected(region.vertex_count(), 0);
    if (n >= 1) {
        const DiamondGraph diamond(n);
        const FiringVector u = formula(diamond);
        for (Vertex v : diamond.graph().non_sinks()) {
            const LatticePoint p = diamond.point(v);
            const auto w = region.find(p);
            if (!w) {
                if (u.count[v] != 0) {
                    return OdometerMismatch{p, 0, u.count[v]};
                }
                continue;
            }
            expected[*w] = u.count[v];
        }
    }
    const FiringVector& measured = state.measured_odometer();
    for (Vertex v = 0; v < region.vertex_count(); ++v) {
        if (measured.count[v] != expected[v]) {
            return OdometerMismatch{region.point(v), measured.count[v], expected[v]};
        }
    }
    return std::nullopt;
}

std::optional<OdometerMismatch> compare_with_formula(const AggregationState& state, int n) {
    return compare_with_formula(state, n, lattice::odometer_formula);
}

std::vector<Checkpoint> run_checkpoints(int n_max, GrowthVariant variant,
                                        const std::function<void(const Checkpoint&)>& on_checkpoint) {
    if (n_max < 0) {
        throw PreconditionError("n_max must be nonnegative");
    }
    const auto start = std::chrono::steady_clock::now();
    AggregationState state(lattice::diamond_size(n_max), variant);
    std::vector<Checkpoint> checkpoints;
    for (int n = 0; n <= n_max; ++n) {
        state.run_to(lattice::diamond_size(n));
        Checkpoint cp;
        cp.n = n;
        cp.chips = state.released() + 1;
        cp.occupied = state.occupied().size();
        cp.is_diamond = is_diamond(state, n);
        cp.mismatch = compare_with_formula(state, n);
        cp.odometer_match = !cp.mismatch.has_value();
        cp.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
        if (on_checkpoint) {
            on_checkpoint(cp);
        }
        checkpoints.push_back(cp);
    }
    return checkpoints;
}

OdometerReport measured_vs_formula(int n) {
    if (n < 1) {
        throw PreconditionError("odometer comparison needs n >= 1");
    }
    OdometerReport report;
    report.n = n;
    const std::int64_t chips = lattice::diamond_size(n);
    report.modified = compare_with_formula(aggregate(chips, GrowthVariant::Modified), n);
    report.standard = compare_with_formula(aggregate(chips, GrowthVariant::Standard), n);
    return report;
}

FlowLedger flow_audit(const DiamondGraph& diamond, const RotorConfiguration& start,
                      const FiringVector& u, const ChipConfiguration& initial) {
    const DirectedMultigraph& graph = diamond.graph();
    validate(graph, start);
    validate(graph, u);
    validate(graph, initial);

    const std::size_t count = graph.vertex_count();
    FlowLedger ledger{std::vector<std::int64_t>(count, 0), std::vector<std::int64_t>(count, 0),
                      std::vector<std::int64_t>(count, 0)};
    for (Vertex v : graph.non_sinks()) {
        const std::int64_t fired = u.count[v];
        const std::int64_t d = graph.out_degree(v);
        const std::int64_t r = start.index[v];
        ledger.outflow[v] = fired;
        for (std::int64_t i = 0; i < d; ++i) {
            // Firing number k uses edge (r + k) mod d; the first k >= 1 that
            // lands on edge i is ((i - r) mod d), or d when that is zero.
            std::int64_t first = ((i - r) % d + d) % d;
            if (first == 0) {
                first = d;
            }
            const std::int64_t along = fired >= first ? (fired - first) / d + 1 : 0;
            ledger.inflow[graph.target(v, static_cast<std::uint32_t>(i))] += along;
        }
    }
    for (std::size_t v = 0; v < count; ++v) {
        ledger.final_chips[v] = initial.chips[v] + ledger.inflow[v] - ledger.outflow[v];
    }
    return ledger;
}

}  // namespace rotor::aggregation
