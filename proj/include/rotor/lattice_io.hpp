#ifndef ROTOR_LATTICE_IO_HPP
#define ROTOR_LATTICE_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotor/lattice.hpp"

namespace rotor::lattice {

/// One value attached to a lattice site: {"x": int, "y": int, "value": int}.
struct FieldRecord {
    int x = 0;
    int y = 0;
    std::int64_t value = 0;

    friend bool operator==(const FieldRecord&, const FieldRecord&) = default;
};

/// Records for the non-sinks of the diamond, in vertex order.
std::vector<FieldRecord> odometer_records(const DiamondGraph& diamond, const FiringVector& u);
std::vector<FieldRecord> rotor_records(const DiamondGraph& diamond, const RotorConfiguration& rotors);

FiringVector firing_from_records(const DiamondGraph& diamond, const std::vector<FieldRecord>& records);
RotorConfiguration rotors_from_records(const DiamondGraph& diamond,
                                       const std::vector<FieldRecord>& records);

nlohmann::json records_to_json(const std::vector<FieldRecord>& records);
std::vector<FieldRecord> records_from_json(const nlohmann::json& j);

/// Header "x,y,value", one record per line.
std::string records_to_csv(const std::vector<FieldRecord>& records);
std::vector<FieldRecord> records_from_csv(const std::string& text);

// Graph dumps list every site of D_n with its sink flag and edge targets:
//   JSON: {"radius": n, "vertices": [{"x":..,"y":..,"sink":bool,"targets":[[x,y],..]}, ..]}
//   CSV:  x,y,sink,targets   with targets as "x:y" separated by ';'
nlohmann::json diamond_to_json(const DiamondGraph& diamond);
std::string diamond_to_csv(const DiamondGraph& diamond);

/// Rebuilds the engine graph from a dump; vertex ids follow the listing order.
DirectedMultigraph graph_from_diamond_json(const nlohmann::json& j);
DirectedMultigraph graph_from_diamond_csv(const std::string& text);

}  // namespace rotor::lattice

#endif  // ROTOR_LATTICE_IO_HPP
