#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "learnsim/io.hpp"

namespace learnsim {
namespace {

// Plot scales of the original program: Mz = 4 for knowledge,
// Mr = 200 for workability, 1.2 for work.
double default_scale(std::string_view channel) {
  if (channel == "r" || channel == "Pr") return 200.0;
  if (channel == "P") return 1.2;
  return 4.0;
}

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string pixel(double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.2f", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                    std::chars_format::general, 17);
  return std::string(buf.data(), result.ptr);
}

std::string csv_header(std::size_t categories) {
  std::string header = "t";
  for (std::size_t i = 1; i <= categories; ++i) header += ",Z" + std::to_string(i);
  header += ",Z,r,P,F,Pr,segment\n";
  return header;
}

std::string to_csv(const Trajectory& trajectory) {
  std::string out = csv_header(trajectory.categories());
  out.reserve(out.size() + trajectory.rows.size() * 24 * (trajectory.categories() + 6));
  for (const auto& row : trajectory.rows) {
    out += format_number(row.t);
    for (double z : row.Z) {
      out += ',';
      out += format_number(z);
    }
    for (double v : {row.Z_total, row.r, row.P, row.F, row.Pr}) {
      out += ',';
      out += format_number(v);
    }
    out += ',';
    out += std::to_string(row.segment);
    out += '\n';
  }
  return out;
}

std::size_t write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + tmp.string() + "' for writing");
    file.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    file.flush();
    if (!file) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
  return contents.size();
}

std::size_t write_csv(const Trajectory& trajectory, const std::filesystem::path& path) {
  if (trajectory.rows.empty()) throw ValidationError("write_csv: trajectory has no rows");
  return write_file_atomic(path, to_csv(trajectory));
}

std::vector<std::string> channel_names(std::size_t categories) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= categories; ++i) names.push_back("Z" + std::to_string(i));
  for (const char* name : {"Z", "r", "P", "F", "Pr"}) names.emplace_back(name);
  return names;
}

std::string render_svg(const Trajectory& trajectory, const std::vector<std::string>& channels,
                       const SvgOptions& options) {
  const auto known = channel_names(trajectory.categories());
  for (const auto& ch : channels) {
    if (std::find(known.begin(), known.end(), ch) == known.end()) {
      throw ValidationError("unknown channel '" + ch + "'");
    }
  }

  constexpr double kWidth = 640.0, kHeight = 480.0, kLeft = 10.0, kBase = 470.0;
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg += "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg += "<line x1=\"0\" y1=\"" + pixel(kBase) + "\" x2=\"" + pixel(kWidth) + "\" y2=\"" + pixel(kBase) + "\"/>\n";
  svg += "<line x1=\"" + pixel(kLeft) + "\" y1=\"0\" x2=\"" + pixel(kLeft) + "\" y2=\"" + pixel(kHeight) + "\"/>\n";
  svg += "</g>\n";

  for (std::size_t c = 0; c < channels.size(); ++c) {
    const std::string& name = channels[c];
    const auto it = options.scales.find(name);
    const double scale = it != options.scales.end() ? it->second : default_scale(name);
    const std::size_t index =
        static_cast<std::size_t>(std::find(known.begin(), known.end(), name) - known.begin());
    const std::size_t n = trajectory.categories();

    std::string points;
    for (const auto& row : trajectory.rows) {
      double v = 0.0;
      if (index < n) {
        v = row.Z[index];
      } else {
        switch (index - n) {
          case 0: v = row.Z_total; break;
          case 1: v = row.r; break;
          case 2: v = row.P; break;
          case 3: v = row.F; break;
          default: v = row.Pr; break;
        }
      }
      if (!points.empty()) points += ' ';
      points += pixel(kLeft + row.t / options.time_scale) + "," + pixel(kBase - scale * v);
    }
    const char* colour = kPalette[c % kPalette.size()];
    svg += "<polyline data-channel=\"" + name + "\" fill=\"none\" stroke=\"" + colour +
           "\" stroke-width=\"1\" points=\"" + points + "\"/>\n";
    svg += "<text x=\"" + pixel(kWidth - 60.0) + "\" y=\"" + pixel(20.0 + 16.0 * static_cast<double>(c)) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + colour + "\">" + name + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace learnsim
