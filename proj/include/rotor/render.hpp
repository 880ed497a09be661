#ifndef ROTOR_RENDER_HPP
#define ROTOR_RENDER_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include "rotor/aggregation.hpp"
#include "rotor/lattice.hpp"

namespace rotor::render {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kBackground{255, 255, 255};

/// red = north, blue = east, gray = south, black = west.
Rgb color_of(lattice::Compass heading);

/// Binary PPM (P6) of the box [-n, n]^2, one pixel per site, row 0 at
/// y = +n. Occupied sites take the color of their final rotor's heading.
std::string render_ppm(const aggregation::AggregationState& state, int n);

/// Writes to a sibling temporary file and renames it over `path`.
/// Throws std::runtime_error when the file cannot be written.
void write_file_atomically(const std::filesystem::path& path, const std::string& bytes);

}  // namespace rotor::render

#endif  // ROTOR_RENDER_HPP
