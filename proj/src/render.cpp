#include "rotor/render.hpp"

#include <fstream>
#include <stdexcept>
#include <system_error>

namespace rotor::render {

using lattice::Compass;
using lattice::LatticePoint;

Rgb color_of(Compass heading) {
    switch (heading) {
        case Compass::North:
            return {255, 0, 0};
        case Compass::East:
            return {0, 0, 255};
        case Compass::South:
            return {128, 128, 128};
        case Compass::West:
            return {0, 0, 0};
    }
    return kBackground;
}

std::string render_ppm(const aggregation::AggregationState& state, int n) {
    if (n < 0) {
        throw PreconditionError("render radius must be nonnegative");
    }
    const int side = 2 * n + 1;
    std::string bytes = "P6\n" + std::to_string(side) + " " + std::to_string(side) + "\n255\n";
    const std::size_t header = bytes.size();
    bytes.resize(header + 3 * static_cast<std::size_t>(side) * static_cast<std::size_t>(side));

    const auto& region = state.region();
    for (int row = 0; row < side; ++row) {
        for (int col = 0; col < side; ++col) {
            const LatticePoint p{col - n, n - row};
            Rgb pixel = kBackground;
            if (state.is_occupied(p)) {
                const Vertex v = region.vertex(p);
                // Region sinks have no rotor of their own; they still sit at e^0.
                const auto steps = lattice::edge_directions(p);
                pixel = color_of(lattice::heading(steps[state.rotors().index[v]]));
            }
            const std::size_t at = header + 3 * (static_cast<std::size_t>(row) * side + col);
            bytes[at] = static_cast<char>(pixel.r);
            bytes[at + 1] = static_cast<char>(pixel.g);
            bytes[at + 2] = static_cast<char>(pixel.b);
        }
    }
    return bytes;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::path temp = path;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + temp.string() + " for writing");
        }
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) {
            throw std::runtime_error("failed writing " + temp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(temp, path, ec);
    if (ec) {
        std::filesystem::remove(temp, ec);
        throw std::runtime_error("cannot move output into place at " + path.string());
    }
}

}  // namespace rotor::render
