#include "rotor/serialization.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace rotor {

namespace {

std::string next_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) {
            return line;
        }
    }
    throw FormatError("unexpected end of input");
}

void expect_keyword(std::istringstream& line, const std::string& keyword) {
    std::string word;
    if (!(line >> word) || word != keyword) {
        throw FormatError("expected '" + keyword + "', found '" + word + "'");
    }
}

template <typename T>
T read_value(std::istringstream& line, const char* what) {
    T value{};
    if (!(line >> value)) {
        throw FormatError(std::string("malformed ") + what);
    }
    return value;
}

std::size_t snapshot_size(const Snapshot& s) {
    return std::max({s.rotors.index.size(), s.chips.chips.size(), s.firing.count.size()});
}

}  // namespace

void write_graph_text(std::ostream& out, const DirectedMultigraph& graph) {
    out << "rotor-graph " << graph.vertex_count() << '\n';
    out << "sinks " << graph.sinks().size();
    for (Vertex s : graph.sinks()) {
        out << ' ' << s;
    }
    out << '\n';
    for (Vertex v = 0; v < graph.vertex_count(); ++v) {
        out << "out " << v << ' ' << graph.out_degree(v);
        for (Vertex t : graph.out_edges(v)) {
            out << ' ' << t;
        }
        out << '\n';
    }
}

DirectedMultigraph read_graph_text(std::istream& in) {
    std::istringstream header(next_line(in));
    expect_keyword(header, "rotor-graph");
    const auto n = read_value<std::size_t>(header, "vertex count");

    std::istringstream sink_line(next_line(in));
    expect_keyword(sink_line, "sinks");
    const auto k = read_value<std::size_t>(sink_line, "sink count");
    std::vector<Vertex> sinks(k);
    for (auto& s : sinks) {
        s = read_value<Vertex>(sink_line, "sink");
    }

    std::vector<std::vector<Vertex>> edges(n);
    for (std::size_t v = 0; v < n; ++v) {
        std::istringstream line(next_line(in));
        expect_keyword(line, "out");
        if (read_value<std::size_t>(line, "vertex id") != v) {
            throw FormatError("out-edge lines must list vertices in order");
        }
        edges[v].resize(read_value<std::size_t>(line, "out-degree"));
        for (auto& t : edges[v]) {
            t = read_value<Vertex>(line, "edge target");
        }
    }
    return DirectedMultigraph(std::move(edges), std::move(sinks));
}

void write_snapshot_text(std::ostream& out, const Snapshot& snapshot) {
    const std::size_t n = snapshot_size(snapshot);
    out << "rotor-snapshot " << n << '\n';
    for (std::size_t v = 0; v < n; ++v) {
        out << v << ' '
            << (snapshot.rotors.index.empty() ? 0 : snapshot.rotors.index[v]) << ' '
            << (snapshot.chips.chips.empty() ? 0 : snapshot.chips.chips[v]) << ' '
            << (snapshot.firing.count.empty() ? 0 : snapshot.firing.count[v]) << '\n';
    }
}

Snapshot read_snapshot_text(std::istream& in) {
    std::istringstream header(next_line(in));
    expect_keyword(header, "rotor-snapshot");
    const auto n = read_value<std::size_t>(header, "vertex count");
    Snapshot snapshot;
    snapshot.rotors.index.resize(n);
    snapshot.chips.chips.resize(n);
    snapshot.firing.count.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        std::istringstream line(next_line(in));
        if (read_value<std::size_t>(line, "vertex id") != v) {
            throw FormatError("snapshot records must list vertices in order");
        }
        snapshot.rotors.index[v] = read_value<std::uint32_t>(line, "rotor");
        snapshot.chips.chips[v] = read_value<std::int64_t>(line, "chips");
        snapshot.firing.count[v] = read_value<std::int64_t>(line, "firing");
    }
    return snapshot;
}

nlohmann::json to_json(const DirectedMultigraph& graph) {
    nlohmann::json edges = nlohmann::json::array();
    for (Vertex v = 0; v < graph.vertex_count(); ++v) {
        auto span = graph.out_edges(v);
        edges.push_back(std::vector<Vertex>(span.begin(), span.end()));
    }
    return {{"vertices", graph.vertex_count()}, {"sinks", graph.sinks()}, {"out_edges", edges}};
}

DirectedMultigraph graph_from_json(const nlohmann::json& j) {
    try {
        auto edges = j.at("out_edges").get<std::vector<std::vector<Vertex>>>();
        if (edges.size() != j.at("vertices").get<std::size_t>()) {
            throw FormatError("out_edges length differs from vertex count");
        }
        return DirectedMultigraph(std::move(edges), j.at("sinks").get<std::vector<Vertex>>());
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed graph JSON: ") + e.what());
    }
}

nlohmann::json to_json(const Snapshot& snapshot) {
    nlohmann::json records = nlohmann::json::array();
    for (std::size_t v = 0; v < snapshot_size(snapshot); ++v) {
        records.push_back({
            {"vertex", v},
            {"rotor", snapshot.rotors.index.empty() ? 0 : snapshot.rotors.index[v]},
            {"chips", snapshot.chips.chips.empty() ? 0 : snapshot.chips.chips[v]},
            {"firing", snapshot.firing.count.empty() ? 0 : snapshot.firing.count[v]},
        });
    }
    return records;
}

Snapshot snapshot_from_json(const nlohmann::json& j) {
    try {
        const std::size_t n = j.size();
        Snapshot snapshot;
        snapshot.rotors.index.resize(n);
        snapshot.chips.chips.resize(n);
        snapshot.firing.count.resize(n);
        for (const auto& record : j) {
            const auto v = record.at("vertex").get<std::size_t>();
            if (v >= n) {
                throw FormatError("snapshot vertex id out of range");
            }
            snapshot.rotors.index[v] = record.at("rotor").get<std::uint32_t>();
            snapshot.chips.chips[v] = record.at("chips").get<std::int64_t>();
            snapshot.firing.count[v] = record.at("firing").get<std::int64_t>();
        }
        return snapshot;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed snapshot JSON: ") + e.what());
    }
}

nlohmann::json to_json(const Instance& instance) {
    return {{"graph", to_json(instance.graph)},
            {"state", to_json(Snapshot{instance.state.rotors, instance.state.chips, {}})}};
}

Instance instance_from_json(const nlohmann::json& j) {
    Instance instance{graph_from_json(j.at("graph")), {}};
    Snapshot s = snapshot_from_json(j.at("state"));
    instance.state = State{std::move(s.rotors), std::move(s.chips)};
    validate(instance.graph, instance.state);
    return instance;
}

}  // namespace rotor
