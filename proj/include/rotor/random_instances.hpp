#ifndef ROTOR_RANDOM_INSTANCES_HPP
#define ROTOR_RANDOM_INSTANCES_HPP

#include <cstdint>
#include <random>

#include "rotor/engine.hpp"

namespace rotor {

struct RandomInstanceParams {
    std::size_t max_vertices = 6;
    std::uint32_t max_out_degree = 3;
    std::int64_t max_abs_chips = 3;
};

struct Instance {
    DirectedMultigraph graph;
    State state;
};

/// Seeded stream of small random multigraphs with sinks, rotors and chips.
/// Loops and parallel edges occur; sinks have no out-edges.
class RandomInstanceGenerator {
public:
    RandomInstanceGenerator(std::uint64_t seed, RandomInstanceParams params);

    Instance next();

private:
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

    std::mt19937_64 rng_;
    RandomInstanceParams params_;
};

}  // namespace rotor

#endif  // ROTOR_RANDOM_INSTANCES_HPP
