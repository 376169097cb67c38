#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "learnsim/engine.hpp"
#include "learnsim/errors.hpp"

namespace learnsim {

/// Parses and validates a JSON config. Errors carry the field path and,
/// where it can be located, the source line.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::filesystem::path& path);

/// JSON document that parse_config maps back to an equal SimConfig.
std::string serialize_config(const SimConfig& config);

/// Shortest-safe 17 significant digit rendering.
std::string format_number(double value);

std::string csv_header(std::size_t categories);
std::string to_csv(const Trajectory& trajectory);

/// Writes via a temporary file in the same directory, then renames.
/// Returns bytes written.
std::size_t write_file_atomic(const std::filesystem::path& path, std::string_view contents);
std::size_t write_csv(const Trajectory& trajectory, const std::filesystem::path& path);

struct SvgOptions {
  double time_scale = 5.0;                 // time units per pixel
  std::map<std::string, double> scales;    // pixels per unit, per channel
};

/// Channel names usable in CSV and SVG: Z1..Zn, Z, r, P, F, Pr.
std::vector<std::string> channel_names(std::size_t categories);

/// 640x480 SVG with one polyline per channel. Throws ValidationError for
/// unknown channels.
std::string render_svg(const Trajectory& trajectory, const std::vector<std::string>& channels,
                       const SvgOptions& options = {});

}  // namespace learnsim
