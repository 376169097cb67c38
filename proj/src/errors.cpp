#include "learnsim/errors.hpp"

namespace learnsim {
namespace {

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& line : lines) {
    if (!out.empty()) out += "; ";
    out += line;
  }
  return out.empty() ? std::string("validation failed") : out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> diagnostics)
    : std::invalid_argument(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

}  // namespace learnsim
