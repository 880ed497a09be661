#include "rotor/random_instances.hpp"

#include <algorithm>
#include <numeric>

namespace rotor {

RandomInstanceGenerator::RandomInstanceGenerator(std::uint64_t seed,
                                                 RandomInstanceParams params)
    : rng_(seed), params_(params) {
    if (params_.max_vertices < 1 || params_.max_out_degree < 1 || params_.max_abs_chips < 0) {
        throw PreconditionError("invalid random instance parameters");
    }
}

std::int64_t RandomInstanceGenerator::uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
}

Instance RandomInstanceGenerator::next() {
    const auto max_n = static_cast<std::int64_t>(params_.max_vertices);
    const auto n = static_cast<std::size_t>(uniform(std::min<std::int64_t>(2, max_n), max_n));
    const auto sink_count = static_cast<std::size_t>(
        n == 1 ? 1 : uniform(1, static_cast<std::int64_t>(n) - 1));

    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::shuffle(order.begin(), order.end(), rng_);
    std::vector<Vertex> sinks(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(sink_count));
    std::sort(sinks.begin(), sinks.end());

    std::vector<std::vector<Vertex>> edges(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (std::binary_search(sinks.begin(), sinks.end(), static_cast<Vertex>(v))) {
            continue;
        }
        const auto d = uniform(1, params_.max_out_degree);
        for (std::int64_t i = 0; i < d; ++i) {
            edges[v].push_back(static_cast<Vertex>(uniform(0, static_cast<std::int64_t>(n) - 1)));
        }
    }

    Instance instance{DirectedMultigraph(std::move(edges), std::move(sinks)), {}};
    instance.state = make_state(instance.graph);
    for (Vertex v : instance.graph.non_sinks()) {
        instance.state.rotors.index[v] =
            static_cast<std::uint32_t>(uniform(0, instance.graph.out_degree(v) - 1));
    }
    for (auto& c : instance.state.chips.chips) {
        c = uniform(-params_.max_abs_chips, params_.max_abs_chips);
    }
    return instance;
}

}  // namespace rotor
