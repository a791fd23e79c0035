#ifndef ONEBIT_CSV_HPP
#define ONEBIT_CSV_HPP

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "onebit/harness.hpp"
#include "onebit/infotheory.hpp"

namespace onebit {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using CsvCell = std::variant<std::int64_t, double, bool>;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;
};

/// 17 significant digits, locale independent.
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string format_cell(const CsvCell& cell) {
  return std::visit(
      [](auto v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>)
          return v ? "1" : "0";
        else if constexpr (std::is_same_v<T, double>)
          return format_double(v);
        else
          return std::to_string(v);
      },
      cell);
}

/// Header line first, comma separated, LF line endings.
inline std::string to_csv(const CsvTable& table) {
  std::string out;
  auto emit_line = [&out](const auto& cells, auto&& fmt) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += fmt(cells[i]);
    }
    out += '\n';
  };
  emit_line(table.header, [](const std::string& s) { return s; });
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw std::invalid_argument("csv row width does not match header");
    emit_line(row, format_cell);
  }
  return out;
}

inline void write_csv(const CsvTable& table, const std::filesystem::path& path) {
  if (table.rows.empty()) throw std::invalid_argument("refusing to write an empty table");
  const std::string text = to_csv(table);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file: " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("failed writing output file: " + path.string());
}

inline CsvTable per_step_table(const SimReport& report) {
  CsvTable t{{"k", "theta", "theta_hat", "objective", "fast_path"}, {}};
  t.rows.reserve(report.per_step.size());
  for (const auto& s : report.per_step)
    t.rows.push_back({static_cast<std::int64_t>(s.k), s.theta, s.theta_hat, s.objective, s.fast_path});
  return t;
}

inline CsvTable node_sweep_table(const std::vector<SweepRow>& rows) {
  CsvTable t{{"n", "nmse"}, {}};
  for (const auto& r : rows)
    t.rows.push_back({static_cast<std::int64_t>(r.parameter), r.report.nmse});
  return t;
}

inline CsvTable power_sweep_table(const std::vector<SweepRow>& rows) {
  CsvTable t{{"p_tot", "nmse"}, {}};
  for (const auto& r : rows) t.rows.push_back({r.parameter, r.report.nmse});
  return t;
}

inline CsvTable mi_table(const MICurve& curve) {
  CsvTable t{{"sigma_v", "mi_bits"}, {}};
  for (std::size_t i = 0; i < curve.sigma_values.size(); ++i)
    t.rows.push_back({curve.sigma_values[i], curve.mi_bits[i]});
  return t;
}

}  // namespace onebit

#endif  // ONEBIT_CSV_HPP
