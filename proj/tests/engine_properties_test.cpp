// Randomized invariants of the firing algebra.
#include <gtest/gtest.h>

#include <random>

#include "rotor/engine.hpp"
#include "rotor/random_instances.hpp"
#include "test_support.hpp"

namespace rotor {
namespace {

constexpr int kCases = 2000;

class EngineProperties : public ::testing::Test {
protected:
    RandomInstanceGenerator generator{20240601, {7, 4, 5}};
    std::mt19937_64 rng{77};

    Vertex random_non_sink(const DirectedMultigraph& g) {
        const auto& ns = g.non_sinks();
        return ns[std::uniform_int_distribution<std::size_t>(0, ns.size() - 1)(rng)];
    }
};

TEST_F(EngineProperties, FiringOperatorsCommute) {
    for (int i = 0; i < kCases; ++i) {
        auto [g, state] = generator.next();
        const Vertex v = random_non_sink(g);
        const Vertex w = random_non_sink(g);
        State vw = state;
        fire(g, vw, v);
        fire(g, vw, w);
        State wv = state;
        fire(g, wv, w);
        fire(g, wv, v);
        ASSERT_EQ(vw, wv);
    }
}

TEST_F(EngineProperties, UnfireInvertsFire) {
    for (int i = 0; i < kCases; ++i) {
        auto [g, state] = generator.next();
        const Vertex v = random_non_sink(g);
        State a = state;
        fire(g, a, v);
        unfire(g, a, v);
        ASSERT_EQ(a, state);
        State b = state;
        unfire(g, b, v);
        fire(g, b, v);
        ASSERT_EQ(b, state);
    }
}

TEST_F(EngineProperties, ChipTotalIsConserved) {
    for (int i = 0; i < kCases; ++i) {
        auto [g, state] = generator.next();
        const std::int64_t total = state.chips.total();
        fire(g, state, random_non_sink(g));
        ASSERT_EQ(state.chips.total(), total);
        unfire(g, state, random_non_sink(g));
        ASSERT_EQ(state.chips.total(), total);
        apply_firing_vector(g, state, testing::random_firing(g, rng, 5));
        ASSERT_EQ(state.chips.total(), total);
        try {
            pop_cycles(g, state);
        } catch (const NonTerminationError&) {
        }
        ASSERT_EQ(state.chips.total(), total);
    }
}

TEST_F(EngineProperties, FiringVectorsDecompose) {
    for (int i = 0; i < kCases; ++i) {
        auto [g, state] = generator.next();
        const FiringVector u1 = testing::random_firing(g, rng, 4);
        const FiringVector u2 = testing::random_firing(g, rng, 4);
        FiringVector sum = u1;
        for (std::size_t v = 0; v < sum.count.size(); ++v) {
            sum.count[v] += u2.count[v];
        }
        State stepwise = state;
        apply_firing_vector(g, stepwise, u1);
        apply_firing_vector(g, stepwise, u2);
        State combined = state;
        apply_firing_vector(g, combined, sum);
        ASSERT_EQ(stepwise, combined);
    }
}

TEST_F(EngineProperties, ClosedFormMatchesReplay) {
    for (int i = 0; i < kCases; ++i) {
        auto [g, state] = generator.next();
        const FiringVector u = testing::random_firing(g, rng, 10);
        State closed = state;
        apply_firing_vector(g, closed, u);
        State replayed = state;
        testing::replay_firing_vector(g, replayed, u, rng);
        ASSERT_EQ(closed, replayed);
    }
}

TEST_F(EngineProperties, PopCyclesLeavesAcyclicRotorsAndSameChips) {
    int popped = 0;
    for (int i = 0; i < kCases; ++i) {
        auto [g, state] = generator.next();
        const State before = state;
        try {
            const auto result = pop_cycles(g, state);
            ASSERT_TRUE(is_acyclic(g, state.rotors));
            ASSERT_EQ(state.chips, before.chips);
            // Re-firing what was unfired restores the input exactly.
            apply_firing_vector(g, state, result.unfired);
            ASSERT_EQ(state, before);
            popped += result.pops > 0;
        } catch (const NonTerminationError&) {
            // Self-loop-only vertices can never escape their cycle.
        }
    }
    EXPECT_GT(popped, 0);
}

TEST_F(EngineProperties, IsAcyclicMatchesSubsetDefinition) {
    // Every nonempty A in V' has a vertex whose rotor leaves A.
    for (int i = 0; i < kCases; ++i) {
        auto [g, state] = generator.next();
        const auto& ns = g.non_sinks();
        bool subset_acyclic = true;
        for (std::uint32_t mask = 1; mask < (1u << ns.size()) && subset_acyclic; ++mask) {
            std::vector<std::uint8_t> in_a(g.vertex_count(), 0);
            for (std::size_t k = 0; k < ns.size(); ++k) {
                in_a[ns[k]] = (mask >> k) & 1u;
            }
            bool escapes = false;
            for (std::size_t k = 0; k < ns.size(); ++k) {
                if (in_a[ns[k]] && !in_a[rotor_target(g, state.rotors, ns[k])]) {
                    escapes = true;
                }
            }
            subset_acyclic = escapes;
        }
        ASSERT_EQ(is_acyclic(g, state.rotors), subset_acyclic);
    }
}

TEST_F(EngineProperties, LegalStabilizationIgnoresQueueOrder) {
    int stabilized = 0;
    for (int i = 0; i < kCases; ++i) {
        auto [g, state] = generator.next();
        for (auto& c : state.chips.chips) {
            c = std::abs(c);
        }
        State fifo = state;
        State lifo = state;
        State naive = state;
        FiringVector u_fifo;
        try {
            u_fifo = stabilize_legal(g, fifo, QueueOrder::Fifo);
        } catch (const NonTerminationError&) {
            continue;
        }
        const FiringVector u_lifo = stabilize_legal(g, lifo, QueueOrder::Lifo);
        const FiringVector u_naive = testing::naive_stabilize(g, naive);
        ASSERT_EQ(u_fifo, u_lifo);
        ASSERT_EQ(fifo, lifo);
        ASSERT_EQ(u_fifo, u_naive);
        ASSERT_EQ(fifo, naive);
        for (Vertex v : g.non_sinks()) {
            ASSERT_EQ(fifo.chips.chips[v], 0);
        }
        ++stabilized;
    }
    EXPECT_GT(stabilized, kCases / 4);
}

TEST_F(EngineProperties, PositiveLegalOdometerLeavesAcyclicRotors) {
    for (int i = 0; i < kCases; ++i) {
        auto [g, state] = generator.next();
        for (auto& c : state.chips.chips) {
            c = std::abs(c) + 1;
        }
        FiringVector u;
        try {
            u = stabilize_legal(g, state);
        } catch (const NonTerminationError&) {
            continue;
        }
        bool everywhere = true;
        for (Vertex v : g.non_sinks()) {
            everywhere = everywhere && u.count[v] > 0;
        }
        if (everywhere) {
            ASSERT_TRUE(is_acyclic(g, state.rotors));
        }
    }
}

}  // namespace
}  // namespace rotor
