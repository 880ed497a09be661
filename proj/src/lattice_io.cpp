#include "rotor/lattice_io.hpp"

#include <map>
#include <sstream>

#include "rotor/serialization.hpp"

namespace rotor::lattice {

namespace {

std::vector<std::string> split(const std::string& text, char delimiter) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, delimiter)) {
        parts.push_back(part);
    }
    if (!text.empty() && text.back() == delimiter) {
        parts.emplace_back();
    }
    return parts;
}

std::int64_t parse_int(const std::string& s) {
    try {
        std::size_t used = 0;
        const long long value = std::stoll(s, &used);
        if (used != s.size()) {
            throw FormatError("trailing characters in integer '" + s + "'");
        }
        return value;
    } catch (const std::logic_error&) {
        throw FormatError("not an integer: '" + s + "'");
    }
}

std::vector<std::string> data_lines(const std::string& text, const std::string& header) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> lines;
    bool seen_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (!seen_header) {
            if (line != header) {
                throw FormatError("expected CSV header '" + header + "'");
            }
            seen_header = true;
            continue;
        }
        lines.push_back(line);
    }
    if (!seen_header) {
        throw FormatError("missing CSV header '" + header + "'");
    }
    return lines;
}

DirectedMultigraph assemble(const std::vector<LatticePoint>& points, const std::vector<bool>& sinks,
                            const std::vector<std::vector<LatticePoint>>& targets) {
    std::map<LatticePoint, Vertex> ids;
    for (std::size_t v = 0; v < points.size(); ++v) {
        if (!ids.emplace(points[v], static_cast<Vertex>(v)).second) {
            throw FormatError("duplicate site in graph dump");
        }
    }
    std::vector<std::vector<Vertex>> edges(points.size());
    std::vector<Vertex> sink_ids;
    for (std::size_t v = 0; v < points.size(); ++v) {
        if (sinks[v]) {
            sink_ids.push_back(static_cast<Vertex>(v));
        }
        for (const LatticePoint& t : targets[v]) {
            const auto it = ids.find(t);
            if (it == ids.end()) {
                throw FormatError("edge target outside the dumped vertex set");
            }
            edges[v].push_back(it->second);
        }
    }
    return DirectedMultigraph(std::move(edges), std::move(sink_ids));
}

}  // namespace

std::vector<FieldRecord> odometer_records(const DiamondGraph& diamond, const FiringVector& u) {
    std::vector<FieldRecord> records;
    for (Vertex v : diamond.graph().non_sinks()) {
        const LatticePoint p = diamond.point(v);
        records.push_back({p.x, p.y, u.count[v]});
    }
    return records;
}

std::vector<FieldRecord> rotor_records(const DiamondGraph& diamond, const RotorConfiguration& rotors) {
    std::vector<FieldRecord> records;
    for (Vertex v : diamond.graph().non_sinks()) {
        const LatticePoint p = diamond.point(v);
        records.push_back({p.x, p.y, rotors.index[v]});
    }
    return records;
}

FiringVector firing_from_records(const DiamondGraph& diamond, const std::vector<FieldRecord>& records) {
    FiringVector u = zero_firing(diamond.graph());
    for (const auto& r : records) {
        u.count[diamond.vertex({r.x, r.y})] = r.value;
    }
    validate(diamond.graph(), u);
    return u;
}

RotorConfiguration rotors_from_records(const DiamondGraph& diamond,
                                       const std::vector<FieldRecord>& records) {
    RotorConfiguration rotors = zero_rotors(diamond.graph());
    for (const auto& r : records) {
        if (r.value < 0) {
            throw FormatError("negative rotor index");
        }
        rotors.index[diamond.vertex({r.x, r.y})] = static_cast<std::uint32_t>(r.value);
    }
    validate(diamond.graph(), rotors);
    return rotors;
}

nlohmann::json records_to_json(const std::vector<FieldRecord>& records) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : records) {
        out.push_back({{"x", r.x}, {"y", r.y}, {"value", r.value}});
    }
    return out;
}

std::vector<FieldRecord> records_from_json(const nlohmann::json& j) {
    try {
        std::vector<FieldRecord> records;
        for (const auto& item : j) {
            records.push_back({item.at("x").get<int>(), item.at("y").get<int>(),
                               item.at("value").get<std::int64_t>()});
        }
        return records;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed field JSON: ") + e.what());
    }
}

std::string records_to_csv(const std::vector<FieldRecord>& records) {
    std::ostringstream out;
    out << "x,y,value\n";
    for (const auto& r : records) {
        out << r.x << ',' << r.y << ',' << r.value << '\n';
    }
    return out.str();
}

std::vector<FieldRecord> records_from_csv(const std::string& text) {
    std::vector<FieldRecord> records;
    for (const auto& line : data_lines(text, "x,y,value")) {
        const auto cells = split(line, ',');
        if (cells.size() != 3) {
            throw FormatError("expected 3 CSV cells in '" + line + "'");
        }
        records.push_back({static_cast<int>(parse_int(cells[0])), static_cast<int>(parse_int(cells[1])),
                           parse_int(cells[2])});
    }
    return records;
}

nlohmann::json diamond_to_json(const DiamondGraph& diamond) {
    nlohmann::json vertices = nlohmann::json::array();
    const auto& graph = diamond.graph();
    for (Vertex v = 0; v < diamond.vertex_count(); ++v) {
        const LatticePoint p = diamond.point(v);
        nlohmann::json targets = nlohmann::json::array();
        for (Vertex t : graph.out_edges(v)) {
            const LatticePoint q = diamond.point(t);
            targets.push_back({q.x, q.y});
        }
        vertices.push_back({{"x", p.x}, {"y", p.y}, {"sink", graph.is_sink(v)}, {"targets", targets}});
    }
    return {{"radius", diamond.radius()}, {"vertices", vertices}};
}

std::string diamond_to_csv(const DiamondGraph& diamond) {
    std::ostringstream out;
    out << "x,y,sink,targets\n";
    const auto& graph = diamond.graph();
    for (Vertex v = 0; v < diamond.vertex_count(); ++v) {
        const LatticePoint p = diamond.point(v);
        out << p.x << ',' << p.y << ',' << (graph.is_sink(v) ? 1 : 0) << ',';
        bool first = true;
        for (Vertex t : graph.out_edges(v)) {
            const LatticePoint q = diamond.point(t);
            out << (first ? "" : ";") << q.x << ':' << q.y;
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

DirectedMultigraph graph_from_diamond_json(const nlohmann::json& j) {
    try {
        std::vector<LatticePoint> points;
        std::vector<bool> sinks;
        std::vector<std::vector<LatticePoint>> targets;
        for (const auto& item : j.at("vertices")) {
            points.push_back({item.at("x").get<int>(), item.at("y").get<int>()});
            sinks.push_back(item.at("sink").get<bool>());
            auto& list = targets.emplace_back();
            for (const auto& t : item.at("targets")) {
                list.push_back({t.at(0).get<int>(), t.at(1).get<int>()});
            }
        }
        return assemble(points, sinks, targets);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed graph dump: ") + e.what());
    }
}

DirectedMultigraph graph_from_diamond_csv(const std::string& text) {
    std::vector<LatticePoint> points;
    std::vector<bool> sinks;
    std::vector<std::vector<LatticePoint>> targets;
    for (const auto& line : data_lines(text, "x,y,sink,targets")) {
        const auto cells = split(line, ',');
        if (cells.size() != 4) {
            throw FormatError("expected 4 CSV cells in '" + line + "'");
        }
        points.push_back({static_cast<int>(parse_int(cells[0])), static_cast<int>(parse_int(cells[1]))});
        sinks.push_back(parse_int(cells[2]) != 0);
        auto& list = targets.emplace_back();
        if (!cells[3].empty()) {
            for (const auto& pair : split(cells[3], ';')) {
                const auto xy = split(pair, ':');
                if (xy.size() != 2) {
                    throw FormatError("malformed edge target '" + pair + "'");
                }
                list.push_back({static_cast<int>(parse_int(xy[0])), static_cast<int>(parse_int(xy[1]))});
            }
        }
    }
    return assemble(points, sinks, targets);
}

}  // namespace rotor::lattice
