#ifndef ROTOR_SERIALIZATION_HPP
#define ROTOR_SERIALIZATION_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "rotor/engine.hpp"
#include "rotor/random_instances.hpp"

namespace rotor {

/// Rotors, chips and a firing vector over one graph. Any part may be
/// empty when absent.
struct Snapshot {
    RotorConfiguration rotors;
    ChipConfiguration chips;
    FiringVector firing;

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Line-oriented text:
//
//   rotor-graph <vertex-count>
//   sinks <k> <s_1> ... <s_k>
//   out <v> <d> <t_0> ... <t_{d-1}>      (one line per vertex, in order)
//
//   rotor-snapshot <vertex-count>
//   <v> <rotor> <chips> <firing>         (one line per vertex, in order)
void write_graph_text(std::ostream& out, const DirectedMultigraph& graph);
DirectedMultigraph read_graph_text(std::istream& in);

void write_snapshot_text(std::ostream& out, const Snapshot& snapshot);
Snapshot read_snapshot_text(std::istream& in);

// JSON:
//   graph:    {"vertices": N, "sinks": [...], "out_edges": [[...], ...]}
//   snapshot: [{"vertex": v, "rotor": r, "chips": c, "firing": f}, ...]
//   instance: {"graph": <graph>, "state": <snapshot>}
nlohmann::json to_json(const DirectedMultigraph& graph);
DirectedMultigraph graph_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Snapshot& snapshot);
Snapshot snapshot_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);

}  // namespace rotor

#endif  // ROTOR_SERIALIZATION_HPP
