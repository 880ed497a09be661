#ifndef ROTOR_ENGINE_HPP
#define ROTOR_ENGINE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rotor {

using Vertex = std::uint32_t;

/// Thrown when an operation is called outside its domain (firing a sink,
/// a negative firing count, mismatched configuration sizes, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a process that is only guaranteed to terminate under extra
/// hypotheses runs past its guard.
class NonTerminationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Finite directed multigraph with a nonempty sink set.
 *
 * Each vertex owns an ordered list of out-edges, stored as target vertices.
 * Loops and repeated targets are allowed; two edges with the same target are
 * distinguished only by their position in the list. Sinks never fire, so
 * their edge lists are kept but never consulted by the dynamics.
 */
class DirectedMultigraph {
public:
    DirectedMultigraph() = default;
    DirectedMultigraph(std::vector<std::vector<Vertex>> out_edges,
                       std::vector<Vertex> sinks);

    std::size_t vertex_count() const { return sink_mask_.size(); }
    bool contains(Vertex v) const { return v < vertex_count(); }
    bool is_sink(Vertex v) const { return sink_mask_[v] != 0; }

    std::uint32_t out_degree(Vertex v) const {
        return offsets_[v + 1] - offsets_[v];
    }
    Vertex target(Vertex v, std::uint32_t index) const {
        return targets_[offsets_[v] + index];
    }
    std::span<const Vertex> out_edges(Vertex v) const {
        return {targets_.data() + offsets_[v], out_degree(v)};
    }

    const std::vector<Vertex>& sinks() const { return sinks_; }
    const std::vector<Vertex>& non_sinks() const { return non_sinks_; }
    std::uint32_t max_out_degree() const { return max_out_degree_; }

    friend bool operator==(const DirectedMultigraph&,
                           const DirectedMultigraph&) = default;

private:
    std::vector<std::uint32_t> offsets_{0};
    std::vector<Vertex> targets_;
    std::vector<std::uint8_t> sink_mask_;
    std::vector<Vertex> sinks_;
    std::vector<Vertex> non_sinks_;
    std::uint32_t max_out_degree_ = 0;
};

/// Rotor index per vertex; rotor(v) is e_v^{index[v]}. Sink entries are
/// held at zero and carry no meaning.
struct RotorConfiguration {
    std::vector<std::uint32_t> index;

    friend bool operator==(const RotorConfiguration&,
                           const RotorConfiguration&) = default;
};

/// Chip count per vertex. Negative counts are holes.
struct ChipConfiguration {
    std::vector<std::int64_t> chips;

    std::int64_t total() const;

    friend bool operator==(const ChipConfiguration&,
                           const ChipConfiguration&) = default;
};

/// Number of firings per vertex; zero on sinks.
struct FiringVector {
    std::vector<std::int64_t> count;

    bool is_zero() const;

    friend bool operator==(const FiringVector&, const FiringVector&) = default;
};

/// A rotor configuration together with a chip configuration.
struct State {
    RotorConfiguration rotors;
    ChipConfiguration chips;

    friend bool operator==(const State&, const State&) = default;
};

RotorConfiguration zero_rotors(const DirectedMultigraph& graph);
ChipConfiguration zero_chips(const DirectedMultigraph& graph);
FiringVector zero_firing(const DirectedMultigraph& graph);
State make_state(const DirectedMultigraph& graph);

/// Throws PreconditionError unless the rotor configuration is defined on
/// every vertex with an index below the out-degree at non-sinks.
void validate(const DirectedMultigraph& graph, const RotorConfiguration& rotors);
void validate(const DirectedMultigraph& graph, const ChipConfiguration& chips);
void validate(const DirectedMultigraph& graph, const FiringVector& firing);
void validate(const DirectedMultigraph& graph, const State& state);

/// The vertex the rotor at v currently points to.
inline Vertex rotor_target(const DirectedMultigraph& graph,
                           const RotorConfiguration& rotors, Vertex v) {
    return graph.target(v, rotors.index[v]);
}

/// F_v: advance the rotor at v, then send one chip from v along it.
/// The chip count at v may be zero or negative beforehand.
void fire(const DirectedMultigraph& graph, State& state, Vertex v);

/// Exact inverse of fire: pull one chip back along the current rotor of v,
/// then step the rotor back.
void unfire(const DirectedMultigraph& graph, State& state, Vertex v);

/// F^u. Per-vertex flows are counted in closed form, so the cost is
/// O(sum of out-degrees) independent of the magnitude of u.
void apply_firing_vector(const DirectedMultigraph& graph, State& state,
                         const FiringVector& u);

/// True iff the rotor subgraph (V, rho(V')) has no directed cycle.
bool is_acyclic(const DirectedMultigraph& graph, const RotorConfiguration& rotors);

struct CyclePopResult {
    FiringVector unfired;
    std::size_t pops = 0;
};

/// Default cap on the number of popped cycles: |V'| * max out-degree.
std::size_t default_pop_cap(const DirectedMultigraph& graph);

/**
 * Repeatedly locates a directed rotor cycle and unfires each vertex on it
 * once, until the rotors are acyclic. Cycles are found by following rotors
 * from the lowest-indexed vertex not yet known to reach a sink.
 *
 * Chips are left unchanged. Throws NonTerminationError once more than
 * `pop_cap` cycles have been popped.
 */
CyclePopResult pop_cycles(const DirectedMultigraph& graph, State& state,
                          std::size_t pop_cap);
CyclePopResult pop_cycles(const DirectedMultigraph& graph, State& state);

struct WalkResult {
    Vertex end = 0;
    FiringVector odometer;
};

/// Step cap for a single rotor walk: 16 |V| max_d (1 + |V|), saturating.
std::uint64_t walk_step_cap(const DirectedMultigraph& graph);

/**
 * Single-chip rotor walk from `start` until the chip first sits on a vertex
 * with stop[v] != 0. Every step fires the chip's current vertex and is added
 * to `odometer`. Returns the stopping vertex.
 *
 * Reaching a sink that is not a stop vertex is a PreconditionError; running
 * past walk_step_cap is a NonTerminationError.
 */
Vertex rotor_walk(const DirectedMultigraph& graph, RotorConfiguration& rotors,
                  Vertex start, std::span<const std::uint8_t> stop,
                  FiringVector& odometer);

WalkResult rotor_walk(const DirectedMultigraph& graph, RotorConfiguration& rotors,
                      Vertex start, std::span<const std::uint8_t> stop);

enum class QueueOrder { Fifo, Lifo };

/**
 * Legal stabilization: only vertices holding chips fire, until no non-sink
 * holds a chip. Returns the odometer, which does not depend on `order`.
 */
FiringVector stabilize_legal(const DirectedMultigraph& graph, State& state,
                             QueueOrder order = QueueOrder::Fifo);

}  // namespace rotor

#endif  // ROTOR_ENGINE_HPP
