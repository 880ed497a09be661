#ifndef ROTOR_AGGREGATION_HPP
#define ROTOR_AGGREGATION_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rotor/engine.hpp"
#include "rotor/lattice.hpp"

namespace rotor::aggregation {

using lattice::LatticePoint;

enum class GrowthVariant {
    /// Each walk stops at the first unoccupied site.
    Standard,
    /// Walk m stops on leaving A_m intersected with D_{r_m - 1}.
    Modified,
};

std::string to_string(GrowthVariant variant);
GrowthVariant parse_variant(const std::string& name);

/// Smallest r >= 0 with 2r(r+1) > m.
int r_of_m(std::int64_t m);

/**
 * Rotor-router aggregation cluster grown from the origin.
 *
 * The working region is the diamond of radius r_{capacity-1} + 1 with its
 * outer layer as sinks; rotors start at rho_0 and are never reset between
 * walkers. A walk that needs to fire a region sink is an internal error.
 */
class AggregationState {
public:
    /// Empty cluster A_0 = {o}, sized for up to `capacity` chips in total.
    AggregationState(std::int64_t capacity, GrowthVariant variant);

    /// Releases one walker from the origin and adds its endpoint.
    LatticePoint release();

    /// Releases walkers until `chips` chips (including the first) are placed.
    void run_to(std::int64_t chips);

    GrowthVariant variant() const { return variant_; }
    std::int64_t capacity() const { return capacity_; }
    /// Walkers released after the first chip.
    std::int64_t released() const { return released_; }

    const std::vector<LatticePoint>& occupied() const { return occupied_; }
    bool is_occupied(LatticePoint p) const;

    const lattice::DiamondGraph& region() const { return *region_; }
    const RotorConfiguration& rotors() const { return rotors_; }
    /// Total firings per region vertex since the start.
    const FiringVector& measured_odometer() const { return odometer_; }
    std::int64_t measured_at(LatticePoint p) const;

    friend bool operator==(const AggregationState& a, const AggregationState& b) {
        return a.variant_ == b.variant_ && a.capacity_ == b.capacity_ &&
               a.released_ == b.released_ && a.occupied_ == b.occupied_ &&
               a.rotors_ == b.rotors_ && a.odometer_ == b.odometer_;
    }

private:
    void refresh_stop_set();

    GrowthVariant variant_;
    std::int64_t capacity_;
    std::shared_ptr<const lattice::DiamondGraph> region_;
    RotorConfiguration rotors_;
    FiringVector odometer_;
    std::vector<LatticePoint> occupied_;
    std::vector<std::uint8_t> occupied_mask_;
    std::vector<std::uint8_t> stop_;
    std::int64_t released_ = 0;
    int stop_radius_ = 0;
};

/// Cluster after `chips` chips (chips - 1 walkers).
AggregationState aggregate(std::int64_t chips, GrowthVariant variant);

/// True iff the occupied set equals D_n.
bool is_diamond(const AggregationState& state, int n);

struct OdometerMismatch {
    LatticePoint where;
    std::int64_t measured = 0;
    std::int64_t expected = 0;
};

/// Signature of a closed-form odometer, so checks can be run against
/// deliberately altered formulas.
using OdometerFormula = std::function<FiringVector(const lattice::DiamondGraph&)>;

/// Compares the measured odometer with u_n on D_{n-1} and with zero on the
/// rest of the region. Returns the first mismatch in vertex order.
std::optional<OdometerMismatch> compare_with_formula(const AggregationState& state, int n,
                                                     const OdometerFormula& formula);
std::optional<OdometerMismatch> compare_with_formula(const AggregationState& state, int n);

struct Checkpoint {
    int n = 0;
    std::int64_t chips = 0;
    std::size_t occupied = 0;
    bool is_diamond = false;
    bool odometer_match = false;
    double wall_ms = 0.0;
    std::optional<OdometerMismatch> mismatch;
};

/// One run to 2 n_max (n_max + 1) + 1 chips, inspecting the cluster and
/// odometer at every m = 2n(n+1), n = 0..n_max.
std::vector<Checkpoint> run_checkpoints(int n_max, GrowthVariant variant,
                                        const std::function<void(const Checkpoint&)>& on_checkpoint = {});

struct OdometerReport {
    int n = 0;
    std::optional<OdometerMismatch> modified;
    std::optional<OdometerMismatch> standard;

    bool equal() const { return !modified && !standard; }
};

/// Runs both variants to 2n(n+1) + 1 chips and compares each measured
/// odometer with the closed form.
OdometerReport measured_vs_formula(int n);

/// Chip bookkeeping of F^u from a given start, computed edge by edge.
struct FlowLedger {
    std::vector<std::int64_t> inflow;
    std::vector<std::int64_t> outflow;
    /// initial + inflow - outflow.
    std::vector<std::int64_t> final_chips;
};

FlowLedger flow_audit(const lattice::DiamondGraph& diamond, const RotorConfiguration& start,
                      const FiringVector& u, const ChipConfiguration& initial);

}  // namespace rotor::aggregation

#endif  // ROTOR_AGGREGATION_HPP
