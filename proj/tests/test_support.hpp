#ifndef ROTOR_TESTS_TEST_SUPPORT_HPP
#define ROTOR_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <array>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotor/engine.hpp"

namespace rotor::testing {

// Random firing vector with entries in [0, factor * d_v].
inline FiringVector random_firing(const DirectedMultigraph& graph, std::mt19937_64& rng,
                                  std::int64_t factor) {
    FiringVector u = zero_firing(graph);
    for (Vertex v : graph.non_sinks()) {
        u.count[v] = std::uniform_int_distribution<std::int64_t>(0, factor * graph.out_degree(v))(rng);
    }
    return u;
}

// Replays F^u one single fire at a time, in a shuffled interleaving.
inline void replay_firing_vector(const DirectedMultigraph& graph, State& state, const FiringVector& u,
                                 std::mt19937_64& rng) {
    std::vector<Vertex> sequence;
    for (Vertex v : graph.non_sinks()) {
        sequence.insert(sequence.end(), static_cast<std::size_t>(u.count[v]), v);
    }
    std::shuffle(sequence.begin(), sequence.end(), rng);
    for (Vertex v : sequence) {
        fire(graph, state, v);
    }
}

// Legal stabilization oracle: always fire the lowest-indexed vertex holding a chip.
inline FiringVector naive_stabilize(const DirectedMultigraph& graph, State& state) {
    FiringVector u = zero_firing(graph);
    while (true) {
        auto it = std::find_if(graph.non_sinks().begin(), graph.non_sinks().end(),
                               [&](Vertex v) { return state.chips.chips[v] > 0; });
        if (it == graph.non_sinks().end()) {
            return u;
        }
        fire(graph, state, *it);
        ++u.count[*it];
    }
}

struct Image {
    int width = 0;
    int height = 0;
    std::string pixels;  // RGB triples, row-major.

    std::array<unsigned char, 3> at(int row, int col) const {
        const std::size_t i = 3 * (static_cast<std::size_t>(row) * width + col);
        return {static_cast<unsigned char>(pixels[i]), static_cast<unsigned char>(pixels[i + 1]),
                static_cast<unsigned char>(pixels[i + 2])};
    }
};

// Minimal binary PPM reader for 8-bit images.
inline Image read_ppm(const std::string& bytes) {
    std::istringstream in(bytes);
    std::string magic;
    int maxval = 0;
    Image image;
    in >> magic >> image.width >> image.height >> maxval;
    in.get();
    if (magic != "P6" || maxval != 255 || !in) {
        throw std::runtime_error("not an 8-bit P6 image");
    }
    const auto offset = static_cast<std::size_t>(in.tellg());
    image.pixels = bytes.substr(offset);
    if (image.pixels.size() != 3 * static_cast<std::size_t>(image.width) * image.height) {
        throw std::runtime_error("truncated pixel data");
    }
    return image;
}

}  // namespace rotor::testing

#endif  // ROTOR_TESTS_TEST_SUPPORT_HPP
