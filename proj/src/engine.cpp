#include "rotor/engine.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

namespace rotor {

namespace {

void require(bool condition, const std::string& message) {
    if (!condition) {
        throw PreconditionError(message);
    }
}

void require_firable(const DirectedMultigraph& graph, Vertex v) {
    require(graph.contains(v), "vertex " + std::to_string(v) + " is not in the graph");
    require(!graph.is_sink(v), "vertex " + std::to_string(v) + " is a sink and cannot fire");
}

// Fires v k times, counting the chips per out-edge in closed form.
void fire_repeatedly(const DirectedMultigraph& graph, State& state, Vertex v,
                     std::int64_t k) {
    if (k == 0) {
        return;
    }
    const std::int64_t d = graph.out_degree(v);
    const std::int64_t start = state.rotors.index[v];
    const std::int64_t full = k / d;
    const std::int64_t rem = k % d;
    // Firings 1..k use edge indices start+1, start+2, ... (mod d): every
    // edge gets `full` chips and the first `rem` after start get one more.
    for (std::int64_t i = 0; i < d; ++i) {
        const std::int64_t offset = ((i - start - 1) % d + d) % d;
        const std::int64_t sent = full + (offset < rem ? 1 : 0);
        state.chips.chips[graph.target(v, static_cast<std::uint32_t>(i))] += sent;
    }
    state.chips.chips[v] -= k;
    state.rotors.index[v] = static_cast<std::uint32_t>((start + k) % d);
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

}  // namespace

DirectedMultigraph::DirectedMultigraph(std::vector<std::vector<Vertex>> out_edges,
                                       std::vector<Vertex> sinks) {
    const std::size_t n = out_edges.size();
    require(!sinks.empty(), "sink set must be nonempty");

    sink_mask_.assign(n, 0);
    for (Vertex s : sinks) {
        require(s < n, "sink " + std::to_string(s) + " is not a vertex");
        sink_mask_[s] = 1;
    }

    offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& edges = out_edges[v];
        for (Vertex t : edges) {
            require(t < n, "edge target " + std::to_string(t) + " is not a vertex");
        }
        if (sink_mask_[v]) {
            sinks_.push_back(static_cast<Vertex>(v));
        } else {
            require(!edges.empty(),
                    "non-sink vertex " + std::to_string(v) + " has no out-edges");
            non_sinks_.push_back(static_cast<Vertex>(v));
            max_out_degree_ = std::max<std::uint32_t>(max_out_degree_,
                                                      static_cast<std::uint32_t>(edges.size()));
        }
        offsets_[v + 1] = offsets_[v] + static_cast<std::uint32_t>(edges.size());
    }

    targets_.reserve(offsets_.back());
    for (const auto& edges : out_edges) {
        targets_.insert(targets_.end(), edges.begin(), edges.end());
    }
}

std::int64_t ChipConfiguration::total() const {
    return std::accumulate(chips.begin(), chips.end(), std::int64_t{0});
}

bool FiringVector::is_zero() const {
    return std::all_of(count.begin(), count.end(), [](std::int64_t c) { return c == 0; });
}

RotorConfiguration zero_rotors(const DirectedMultigraph& graph) {
    return {std::vector<std::uint32_t>(graph.vertex_count(), 0)};
}

ChipConfiguration zero_chips(const DirectedMultigraph& graph) {
    return {std::vector<std::int64_t>(graph.vertex_count(), 0)};
}

FiringVector zero_firing(const DirectedMultigraph& graph) {
    return {std::vector<std::int64_t>(graph.vertex_count(), 0)};
}

State make_state(const DirectedMultigraph& graph) {
    return {zero_rotors(graph), zero_chips(graph)};
}

void validate(const DirectedMultigraph& graph, const RotorConfiguration& rotors) {
    require(rotors.index.size() == graph.vertex_count(), "rotor configuration size mismatch");
    for (Vertex v : graph.non_sinks()) {
        require(rotors.index[v] < graph.out_degree(v),
                "rotor index out of range at vertex " + std::to_string(v));
    }
}

void validate(const DirectedMultigraph& graph, const ChipConfiguration& chips) {
    require(chips.chips.size() == graph.vertex_count(), "chip configuration size mismatch");
}

void validate(const DirectedMultigraph& graph, const FiringVector& firing) {
    require(firing.count.size() == graph.vertex_count(), "firing vector size mismatch");
    for (std::size_t v = 0; v < firing.count.size(); ++v) {
        require(firing.count[v] >= 0,
                "negative firing count at vertex " + std::to_string(v));
        require(firing.count[v] == 0 || !graph.is_sink(static_cast<Vertex>(v)),
                "sink " + std::to_string(v) + " has a nonzero firing count");
    }
}

void validate(const DirectedMultigraph& graph, const State& state) {
    validate(graph, state.rotors);
    validate(graph, state.chips);
}

void fire(const DirectedMultigraph& graph, State& state, Vertex v) {
    require_firable(graph, v);
    auto& rotor = state.rotors.index[v];
    rotor = (rotor + 1) % graph.out_degree(v);
    state.chips.chips[v] -= 1;
    state.chips.chips[graph.target(v, rotor)] += 1;
}

void unfire(const DirectedMultigraph& graph, State& state, Vertex v) {
    require_firable(graph, v);
    auto& rotor = state.rotors.index[v];
    state.chips.chips[graph.target(v, rotor)] -= 1;
    state.chips.chips[v] += 1;
    const std::uint32_t d = graph.out_degree(v);
    rotor = (rotor + d - 1) % d;
}

void apply_firing_vector(const DirectedMultigraph& graph, State& state,
                         const FiringVector& u) {
    validate(graph, state);
    validate(graph, u);
    for (Vertex v : graph.non_sinks()) {
        fire_repeatedly(graph, state, v, u.count[v]);
    }
}

bool is_acyclic(const DirectedMultigraph& graph, const RotorConfiguration& rotors) {
    validate(graph, rotors);
    // 0 = unvisited, 1 = on the current rotor path, 2 = known to reach a sink.
    std::vector<std::uint8_t> mark(graph.vertex_count(), 0);
    for (Vertex s : graph.sinks()) {
        mark[s] = 2;
    }
    std::vector<Vertex> path;
    for (Vertex start : graph.non_sinks()) {
        Vertex v = start;
        path.clear();
        while (mark[v] == 0) {
            mark[v] = 1;
            path.push_back(v);
            v = rotor_target(graph, rotors, v);
        }
        if (mark[v] == 1) {
            return false;
        }
        for (Vertex p : path) {
            mark[p] = 2;
        }
    }
    return true;
}

std::size_t default_pop_cap(const DirectedMultigraph& graph) {
    return std::max<std::size_t>(1, graph.non_sinks().size() * graph.max_out_degree());
}

CyclePopResult pop_cycles(const DirectedMultigraph& graph, State& state) {
    return pop_cycles(graph, state, default_pop_cap(graph));
}

CyclePopResult pop_cycles(const DirectedMultigraph& graph, State& state,
                          std::size_t pop_cap) {
    validate(graph, state);
    CyclePopResult result{zero_firing(graph), 0};

    std::vector<std::uint8_t> mark(graph.vertex_count(), 0);
    std::vector<std::size_t> position(graph.vertex_count(), 0);
    for (Vertex s : graph.sinks()) {
        mark[s] = 2;
    }

    std::vector<Vertex> path;
    for (Vertex start : graph.non_sinks()) {
        if (mark[start] != 0) {
            continue;
        }
        path.clear();
        Vertex v = start;
        while (mark[v] != 2) {
            if (mark[v] == 0) {
                mark[v] = 1;
                position[v] = path.size();
                path.push_back(v);
                v = rotor_target(graph, state.rotors, v);
                continue;
            }
            // v is on the current path: path[position[v]..] is a rotor cycle.
            if (result.pops == pop_cap) {
                throw NonTerminationError("cycle popping exceeded " +
                                          std::to_string(pop_cap) + " pops");
            }
            const std::size_t first = position[v];
            for (std::size_t i = first; i < path.size(); ++i) {
                const Vertex c = path[i];
                unfire(graph, state, c);
                result.unfired.count[c] += 1;
                mark[c] = 0;
            }
            ++result.pops;
            path.resize(first);
        }
        for (Vertex p : path) {
            mark[p] = 2;
        }
    }
    return result;
}

std::uint64_t walk_step_cap(const DirectedMultigraph& graph) {
    const std::uint64_t n = graph.vertex_count();
    std::uint64_t cap = saturating_mul(16, n);
    cap = saturating_mul(cap, std::max<std::uint64_t>(1, graph.max_out_degree()));
    return saturating_mul(cap, 1 + n);
}

Vertex rotor_walk(const DirectedMultigraph& graph, RotorConfiguration& rotors,
                  Vertex start, std::span<const std::uint8_t> stop,
                  FiringVector& odometer) {
    require(stop.size() == graph.vertex_count(), "stop mask size mismatch");
    require(odometer.count.size() == graph.vertex_count(), "odometer size mismatch");
    require(graph.contains(start), "walk start is not a vertex");
    require(!stop[start], "walk start lies in the stop set");

    const std::uint64_t cap = walk_step_cap(graph);
    std::uint64_t steps = 0;
    Vertex v = start;
    while (!stop[v]) {
        if (graph.is_sink(v)) {
            throw PreconditionError("rotor walk reached sink " + std::to_string(v) +
                                    " outside the stop set");
        }
        if (++steps > cap) {
            throw NonTerminationError("rotor walk exceeded " + std::to_string(cap) +
                                      " steps without reaching the stop set");
        }
        auto& rotor = rotors.index[v];
        if (++rotor == graph.out_degree(v)) {
            rotor = 0;
        }
        odometer.count[v] += 1;
        v = graph.target(v, rotor);
    }
    return v;
}

WalkResult rotor_walk(const DirectedMultigraph& graph, RotorConfiguration& rotors,
                      Vertex start, std::span<const std::uint8_t> stop) {
    WalkResult result{0, zero_firing(graph)};
    result.end = rotor_walk(graph, rotors, start, stop, result.odometer);
    return result;
}

FiringVector stabilize_legal(const DirectedMultigraph& graph, State& state,
                             QueueOrder order) {
    validate(graph, state);
    const std::size_t n = graph.vertex_count();
    for (Vertex v : graph.non_sinks()) {
        require(state.chips.chips[v] >= 0,
                "legal stabilization needs nonnegative chips, vertex " + std::to_string(v));
    }

    // Chips that can wander into a sink-free closed class never stop moving.
    std::vector<std::vector<Vertex>> reverse(n);
    for (Vertex v : graph.non_sinks()) {
        for (Vertex t : graph.out_edges(v)) {
            reverse[t].push_back(v);
        }
    }
    std::vector<std::uint8_t> reaches_sink(n, 0);
    std::vector<Vertex> stack(graph.sinks().begin(), graph.sinks().end());
    for (Vertex s : stack) {
        reaches_sink[s] = 1;
    }
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (Vertex p : reverse[v]) {
            if (!reaches_sink[p]) {
                reaches_sink[p] = 1;
                stack.push_back(p);
            }
        }
    }
    std::vector<std::uint8_t> reached(n, 0);
    for (Vertex v : graph.non_sinks()) {
        if (state.chips.chips[v] > 0 && !reached[v]) {
            reached[v] = 1;
            stack.push_back(v);
        }
    }
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        if (!reaches_sink[v]) {
            throw NonTerminationError("chips can reach vertex " + std::to_string(v) +
                                      ", which has no path to a sink");
        }
        if (graph.is_sink(v)) {
            continue;
        }
        for (Vertex t : graph.out_edges(v)) {
            if (!reached[t]) {
                reached[t] = 1;
                stack.push_back(t);
            }
        }
    }

    FiringVector odometer = zero_firing(graph);
    std::deque<Vertex> queue;
    std::vector<std::uint8_t> queued(n, 0);
    auto push = [&](Vertex v) {
        if (!graph.is_sink(v) && !queued[v] && state.chips.chips[v] > 0) {
            queued[v] = 1;
            queue.push_back(v);
        }
    };
    for (Vertex v : graph.non_sinks()) {
        push(v);
    }
    while (!queue.empty()) {
        Vertex v;
        if (order == QueueOrder::Fifo) {
            v = queue.front();
            queue.pop_front();
        } else {
            v = queue.back();
            queue.pop_back();
        }
        queued[v] = 0;
        // Every one of these firings is legal: each removes one of the chips
        // present when v was dequeued.
        const std::int64_t k = state.chips.chips[v];
        if (k <= 0) {
            continue;
        }
        fire_repeatedly(graph, state, v, k);
        odometer.count[v] += k;
        for (Vertex t : graph.out_edges(v)) {
            push(t);
        }
        push(v);
    }
    return odometer;
}

}  // namespace rotor
