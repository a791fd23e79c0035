#ifndef ONEBIT_GRID_HPP
#define ONEBIT_GRID_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace onebit {

/// `start:stop:count` (linear) or `log:start:stop:count` (geometric), endpoints inclusive.
inline std::vector<double> parse_grid(std::string_view spec) {
  bool log_spaced = false;
  if (spec.starts_with("log:")) {
    log_spaced = true;
    spec.remove_prefix(4);
  }
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t colon = spec.find(':', pos);
    parts.emplace_back(spec.substr(pos, colon == std::string_view::npos ? spec.npos : colon - pos));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (parts.size() != 3) throw std::invalid_argument("grid must be [log:]start:stop:count");

  double start = 0.0;
  double stop = 0.0;
  long count = 0;
  try {
    std::size_t used = 0;
    start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("start");
    stop = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("stop");
    count = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("count");
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must be [log:]start:stop:count with numeric fields");
  }
  if (count < 1) throw std::invalid_argument("grid count must be >= 1");
  if (log_spaced && !(start > 0.0 && stop > 0.0))
    throw std::invalid_argument("log grid endpoints must be > 0");

  std::vector<double> grid(static_cast<std::size_t>(count));
  if (count == 1) {
    grid[0] = start;
    return grid;
  }
  const double denom = static_cast<double>(count - 1);
  for (long i = 0; i < count; ++i) {
    const double u = static_cast<double>(i) / denom;
    grid[static_cast<std::size_t>(i)] =
        log_spaced ? std::exp(std::log(start) + u * (std::log(stop) - std::log(start)))
                   : start + u * (stop - start);
  }
  grid.back() = stop;
  return grid;
}

}  // namespace onebit

#endif  // ONEBIT_GRID_HPP
