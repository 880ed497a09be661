#ifndef ROTOR_LATTICE_HPP
#define ROTOR_LATTICE_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <vector>

#include "rotor/engine.hpp"

namespace rotor::lattice {

struct LatticePoint {
    int x = 0;
    int y = 0;

    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
    friend LatticePoint operator+(LatticePoint a, LatticePoint b) {
        return {a.x + b.x, a.y + b.y};
    }
};

inline constexpr LatticePoint kOrigin{0, 0};
inline constexpr LatticePoint kEast{1, 0};
inline constexpr LatticePoint kNorth{0, 1};

inline int norm(LatticePoint p) { return std::abs(p.x) + std::abs(p.y); }

/// Quarter turn R(x, y) = (y, -x): clockwise with +y pointing north.
constexpr LatticePoint rotate(LatticePoint p) { return {p.y, -p.x}; }

/// R^times, for any integer `times` (negative turns go the other way).
LatticePoint rotate(LatticePoint p, int times);

/// |D_n| = 2n(n+1) + 1.
inline std::int64_t diamond_size(std::int64_t n) { return 2 * n * (n + 1) + 1; }

/// z = R^j w with w in Q = {x >= 0, y > 0}.
struct QuadrantDecomposition {
    int j = 0;
    LatticePoint w;

    friend bool operator==(const QuadrantDecomposition&, const QuadrantDecomposition&) = default;
};

/// Unique (j, w) for z != o. Throws PreconditionError for the origin.
QuadrantDecomposition quadrant_decompose(LatticePoint z);

/// Unit displacements of e_z^0 .. e_z^3 in the layered square lattice.
/// Off the origin the cycle starts at R^j e_2 and turns by R; on an axis the
/// third edge repeats the first (the doubled outward edge).
std::array<LatticePoint, 4> edge_directions(LatticePoint z);

enum class Compass { North, East, South, West };

/// Compass heading of a unit displacement.
Compass heading(LatticePoint step);

/**
 * The induced subgraph D_n of the layered square lattice with sinks L_n.
 *
 * Vertices are numbered densely; a lookup table over the bounding box
 * [-n, n]^2 maps points to vertex ids in O(1). Sinks carry no out-edges.
 */
class DiamondGraph {
public:
    explicit DiamondGraph(int n);

    int radius() const { return radius_; }
    const DirectedMultigraph& graph() const { return graph_; }
    std::size_t vertex_count() const { return points_.size(); }

    bool contains(LatticePoint p) const;
    /// Vertex id of p; throws PreconditionError when p is outside D_n.
    Vertex vertex(LatticePoint p) const;
    std::optional<Vertex> find(LatticePoint p) const;
    LatticePoint point(Vertex v) const { return points_[v]; }
    const std::vector<LatticePoint>& points() const { return points_; }
    Vertex origin() const { return vertex(kOrigin); }

private:
    std::size_t box_index(LatticePoint p) const {
        const auto side = static_cast<std::size_t>(2 * radius_ + 1);
        return static_cast<std::size_t>(p.y + radius_) * side +
               static_cast<std::size_t>(p.x + radius_);
    }

    int radius_;
    std::vector<LatticePoint> points_;
    std::vector<std::int32_t> lookup_;
    DirectedMultigraph graph_;
};

DiamondGraph build_diamond_graph(int n);

/// rho_0: every rotor at e_z^0.
RotorConfiguration initial_rotors(const DiamondGraph& diamond);

/// (2n^2 + 2n + 1) chips at the origin, none elsewhere.
ChipConfiguration origin_chips(const DiamondGraph& diamond);

/// l_z = n - |x| - |y|; throws PreconditionError when z is outside D_n.
int ell(LatticePoint z, int n);

/// Membership in C = union over i of R^i (C_2 u C_3), for z in D_{n-1}.
bool in_C(LatticePoint z, int n);

/// u'_n: 2n(n+1) at the origin and l_z (l_z + 1) elsewhere on D_{n-1}.
FiringVector unreduced_odometer(const DiamondGraph& diamond);

/// u_n = u'_n - 1_C.
FiringVector odometer_formula(const DiamondGraph& diamond);

/// rho_n: rotor index u_n(z) mod 4 at each non-sink.
RotorConfiguration predicted_final_rotors(const DiamondGraph& diamond);

/// Geometric direction of the rotor at a non-sink vertex.
Compass rotor_heading(const DiamondGraph& diamond, const RotorConfiguration& rotors, Vertex v);

}  // namespace rotor::lattice

#endif  // ROTOR_LATTICE_HPP
