#include "rotor/lattice.hpp"

#include <string>

namespace rotor::lattice {

namespace {

std::string describe(LatticePoint p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

bool in_quadrant(LatticePoint p) { return p.x >= 0 && p.y > 0; }

// C_2 and C_3 are subsets of Q with x > 0; they differ in the residue of
// l and in how far from the x-axis they start.
bool in_C_quadrant_part(LatticePoint w, int n) {
    if (w.x <= 0 || w.y < 1 || norm(w) > n - 1) {
        return false;
    }
    const int residue = ell(w, n) % 4;
    return (residue == 2 && w.y >= 2) || residue == 3;
}

}  // namespace

LatticePoint rotate(LatticePoint p, int times) {
    for (int k = ((times % 4) + 4) % 4; k > 0; --k) {
        p = rotate(p);
    }
    return p;
}

QuadrantDecomposition quadrant_decompose(LatticePoint z) {
    if (z == kOrigin) {
        throw PreconditionError("the origin has no quadrant decomposition");
    }
    for (int j = 0; j < 4; ++j) {
        const LatticePoint w = rotate(z, -j);
        if (in_quadrant(w)) {
            return {j, w};
        }
    }
    throw PreconditionError("no quadrant decomposition for " + describe(z));
}

std::array<LatticePoint, 4> edge_directions(LatticePoint z) {
    std::array<LatticePoint, 4> steps;
    if (z == kOrigin) {
        for (int i = 0; i < 4; ++i) {
            steps[i] = rotate(kNorth, i);
        }
        return steps;
    }
    const auto [j, w] = quadrant_decompose(z);
    for (int i = 0; i < 4; ++i) {
        steps[i] = (i == 2 && w.x == 0) ? rotate(kNorth, j) : rotate(kNorth, i + j);
    }
    return steps;
}

Compass heading(LatticePoint step) {
    if (step == LatticePoint{0, 1}) return Compass::North;
    if (step == LatticePoint{1, 0}) return Compass::East;
    if (step == LatticePoint{0, -1}) return Compass::South;
    if (step == LatticePoint{-1, 0}) return Compass::West;
    throw PreconditionError("not a unit step: " + describe(step));
}

DiamondGraph::DiamondGraph(int n) : radius_(n) {
    if (n < 1) {
        throw PreconditionError("diamond radius must be at least 1");
    }
    const auto side = static_cast<std::size_t>(2 * n + 1);
    lookup_.assign(side * side, -1);
    for (int y = -n; y <= n; ++y) {
        for (int x = -n; x <= n; ++x) {
            const LatticePoint p{x, y};
            if (norm(p) <= n) {
                lookup_[box_index(p)] = static_cast<std::int32_t>(points_.size());
                points_.push_back(p);
            }
        }
    }

    std::vector<std::vector<Vertex>> edges(points_.size());
    std::vector<Vertex> sinks;
    for (std::size_t v = 0; v < points_.size(); ++v) {
        const LatticePoint z = points_[v];
        if (norm(z) == n) {
            sinks.push_back(static_cast<Vertex>(v));
            continue;
        }
        for (LatticePoint step : edge_directions(z)) {
            edges[v].push_back(vertex(z + step));
        }
    }
    graph_ = DirectedMultigraph(std::move(edges), std::move(sinks));
}

bool DiamondGraph::contains(LatticePoint p) const { return norm(p) <= radius_; }

std::optional<Vertex> DiamondGraph::find(LatticePoint p) const {
    if (!contains(p)) {
        return std::nullopt;
    }
    return static_cast<Vertex>(lookup_[box_index(p)]);
}

Vertex DiamondGraph::vertex(LatticePoint p) const {
    if (!contains(p)) {
        throw PreconditionError(describe(p) + " is outside D_" + std::to_string(radius_));
    }
    return static_cast<Vertex>(lookup_[box_index(p)]);
}

DiamondGraph build_diamond_graph(int n) { return DiamondGraph(n); }

RotorConfiguration initial_rotors(const DiamondGraph& diamond) {
    return zero_rotors(diamond.graph());
}

ChipConfiguration origin_chips(const DiamondGraph& diamond) {
    ChipConfiguration chips = zero_chips(diamond.graph());
    chips.chips[diamond.origin()] = diamond_size(diamond.radius());
    return chips;
}

int ell(LatticePoint z, int n) {
    if (norm(z) > n) {
        throw PreconditionError(describe(z) + " is outside D_" + std::to_string(n));
    }
    return n - norm(z);
}

bool in_C(LatticePoint z, int n) {
    if (n < 1 || norm(z) > n - 1) {
        throw PreconditionError(describe(z) + " is outside D_" + std::to_string(n - 1));
    }
    for (int i = 0; i < 4; ++i) {
        if (in_C_quadrant_part(rotate(z, -i), n)) {
            return true;
        }
    }
    return false;
}

FiringVector unreduced_odometer(const DiamondGraph& diamond) {
    const int n = diamond.radius();
    FiringVector u = zero_firing(diamond.graph());
    for (Vertex v : diamond.graph().non_sinks()) {
        const LatticePoint z = diamond.point(v);
        const std::int64_t l = ell(z, n);
        u.count[v] = z == kOrigin ? 2 * std::int64_t{n} * (n + 1) : l * (l + 1);
    }
    return u;
}

FiringVector odometer_formula(const DiamondGraph& diamond) {
    FiringVector u = unreduced_odometer(diamond);
    for (Vertex v : diamond.graph().non_sinks()) {
        if (in_C(diamond.point(v), diamond.radius())) {
            u.count[v] -= 1;
        }
    }
    return u;
}

RotorConfiguration predicted_final_rotors(const DiamondGraph& diamond) {
    const FiringVector u = odometer_formula(diamond);
    RotorConfiguration rotors = initial_rotors(diamond);
    for (Vertex v : diamond.graph().non_sinks()) {
        rotors.index[v] = static_cast<std::uint32_t>(u.count[v] % 4);
    }
    return rotors;
}

Compass rotor_heading(const DiamondGraph& diamond, const RotorConfiguration& rotors, Vertex v) {
    const LatticePoint from = diamond.point(v);
    const LatticePoint to = diamond.point(rotor_target(diamond.graph(), rotors, v));
    return heading({to.x - from.x, to.y - from.y});
}

}  // namespace rotor::lattice
