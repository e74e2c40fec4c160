#pragma once

// Input CSV schemas:
//   traffic       hour,count          24 rows, hour 0..23
//   solar         event,time          sunrise / solar_noon / sunset, HH:MM
//   measurements  date,time,no_ugm3   30-minute cadence, blank = missing
// Output CSVs always carry a header and 17 significant digits.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "noxsim/error.hpp"
#include "noxsim/signal.hpp"

namespace noxsim::io {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Source of error messages: "path:line".
inline std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

inline double parse_number(std::string_view s, const std::string& context) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v))
    throw InputError(context + ": '" + std::string(s) + "' is not a number");
  return v;
}

/// Rows of a CSV file after its header was checked against `expected`.
struct Table {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;  ///< 1-based source line of each row
};

inline Table read_table(const std::filesystem::path& path, const std::vector<std::string>& expected) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path.string());
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  Table t;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split_row(line);
    if (!have_header) {
      if (cells != expected) {
        std::string want;
        for (const auto& c : expected) want += (want.empty() ? "" : ",") + c;
        throw InputError(where(path, lineno) + ": unknown header '" + std::string(trim(line)) + "', expected '" +
                         want + "'");
      }
      have_header = true;
      continue;
    }
    if (cells.size() != expected.size())
      throw InputError(where(path, lineno) + ": expected " + std::to_string(expected.size()) + " columns, got " +
                       std::to_string(cells.size()));
    t.rows.push_back(std::move(cells));
    t.lines.push_back(lineno);
  }
  if (!have_header) throw InputError(path.string() + ": empty file");
  return t;
}

inline double wrap_minutes(double t) { return noxsim::detail::wrap_unit(t) * 1440.0; }

}  // namespace detail

/// "HH:MM" -> fraction of the day.
inline double parse_clock(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0 || s.size() - colon != 3)
    throw InputError("time '" + std::string(s) + "' is not HH:MM");
  int h = -1;
  int m = -1;
  const auto hs = s.substr(0, colon);
  const auto ms = s.substr(colon + 1);
  const auto rh = std::from_chars(hs.data(), hs.data() + hs.size(), h);
  const auto rm = std::from_chars(ms.data(), ms.data() + ms.size(), m);
  if (rh.ec != std::errc() || rh.ptr != hs.data() + hs.size() || rm.ec != std::errc() ||
      rm.ptr != ms.data() + ms.size() || h < 0 || h > 23 || m < 0 || m > 59)
    throw InputError("time '" + std::string(s) + "' is not a valid HH:MM clock time");
  return (60.0 * h + m) / 1440.0;
}

/// Hourly counts placed at mid-hour, t = (hour + 0.5) / 24.
inline TimeSeries read_traffic_csv(const std::filesystem::path& path) {
  const auto table = detail::read_table(path, {"hour", "count"});
  std::vector<std::optional<double>> counts(24);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto ctx = detail::where(path, table.lines[r]);
    const double h = detail::parse_number(table.rows[r][0], ctx);
    if (h != std::floor(h) || h < 0 || h > 23) throw InputError(ctx + ": hour must be an integer in 0..23");
    const double c = detail::parse_number(table.rows[r][1], ctx);
    if (c < 0) throw InputError(ctx + ": count must be >= 0");
    auto& slot = counts[static_cast<std::size_t>(h)];
    if (slot) throw InputError(ctx + ": duplicate hour " + table.rows[r][0]);
    slot = c;
  }
  TimeSeries ts;
  ts.kind = SeriesKind::traffic;
  for (std::size_t h = 0; h < 24; ++h) {
    if (!counts[h]) throw InputError(path.string() + ": missing hour " + std::to_string(h) + " (24 rows required)");
    ts.samples.push_back({(static_cast<double>(h) + 0.5) / 24.0, *counts[h]});
  }
  return ts;
}

inline SolarEvents read_solar_csv(const std::filesystem::path& path) {
  const auto table = detail::read_table(path, {"event", "time"});
  std::map<std::string, double> found;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto ctx = detail::where(path, table.lines[r]);
    const auto& name = table.rows[r][0];
    if (name != "sunrise" && name != "solar_noon" && name != "sunset")
      throw InputError(ctx + ": unknown event '" + name + "'");
    if (found.count(name)) throw InputError(ctx + ": duplicate event '" + name + "'");
    try {
      found[name] = parse_clock(table.rows[r][1]);
    } catch (const InputError& e) {
      throw InputError(ctx + ": " + e.what());
    }
  }
  for (const char* name : {"sunrise", "solar_noon", "sunset"})
    if (!found.count(name)) throw InputError(path.string() + ": missing event '" + name + "'");
  SolarEvents ev{found["sunrise"], found["solar_noon"], found["sunset"]};
  ev.validate();
  return ev;
}

/// One series per date, in order of first appearance; blank values become NaN.
inline std::vector<DatedSeries> read_measurements_csv(const std::filesystem::path& path) {
  const auto table = detail::read_table(path, {"date", "time", "no_ugm3"});
  std::vector<DatedSeries> days;
  std::map<std::string, std::size_t> index;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto ctx = detail::where(path, table.lines[r]);
    const auto& row = table.rows[r];
    if (row[0].empty()) throw InputError(ctx + ": empty date");
    double t = 0.0;
    try {
      t = parse_clock(row[1]);
    } catch (const InputError& e) {
      throw InputError(ctx + ": " + e.what());
    }
    double v = std::numeric_limits<double>::quiet_NaN();
    if (!row[2].empty()) {
      v = detail::parse_number(row[2], ctx);
      if (v < 0) throw InputError(ctx + ": concentration must be >= 0");
    }
    auto [it, inserted] = index.try_emplace(row[0], days.size());
    if (inserted) days.push_back({row[0], TimeSeries{SeriesKind::concentration, {}, {}}});
    days[it->second].series.samples.push_back({t, v});
  }
  if (days.empty()) throw InputError(path.string() + ": no measurement rows");
  for (auto& d : days) {
    auto& s = d.series.samples;
    std::sort(s.begin(), s.end(), [](const Sample& a, const Sample& b) { return a.t < b.t; });
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i].t == s[i - 1].t) throw InputError(path.string() + ": duplicate time slot on " + d.date);
  }
  return days;
}

/// Averaged measurement day inside `window`, as a curve in ug/m^3.
inline DailySignal load_measurement_curve(const std::filesystem::path& path, const DateRange& window = {}) {
  return build_measurement_curve(average_seasonal_window(read_measurements_csv(path), window));
}

// ---------------------------------------------------------------------------
// Output

using Cell = std::variant<double, long long, std::string>;

inline std::string format_double(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << v;
  return os.str();
}

inline std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

inline void write_row(std::ostream& os, const std::vector<Cell>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
  os << '\n';
}

inline void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<Cell>>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write output file: " + path.string());
  std::vector<Cell> h(header.begin(), header.end());
  write_row(out, h);
  for (const auto& r : rows) {
    if (r.size() != header.size()) throw Error("write_csv: row width does not match header");
    write_row(out, r);
  }
  if (!out) throw InputError("write failed: " + path.string());
}

/// Time series as `t,<value_name>` rows.
inline void write_series_csv(const std::filesystem::path& path, std::span<const Sample> series,
                             const std::string& value_name) {
  std::vector<std::vector<Cell>> rows;
  rows.reserve(series.size());
  for (const auto& s : series) rows.push_back({s.t, s.value});
  write_csv(path, {"t", value_name}, rows);
}

/// Fraction of the day -> "HH:MM", rounded to the minute.
inline std::string format_clock(double t) {
  const long minutes = std::lround(detail::wrap_minutes(t));
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02ld:%02ld", (minutes / 60) % 24, minutes % 60);
  return buf;
}

/// One day of samples in the measurements schema.
inline void write_measurements_csv(const std::filesystem::path& path, const std::string& date,
                                   const TimeSeries& series) {
  std::vector<std::vector<Cell>> rows;
  for (const auto& s : series.samples)
    rows.push_back({date, format_clock(s.t), std::isnan(s.value) ? Cell(std::string()) : Cell(s.value)});
  write_csv(path, {"date", "time", "no_ugm3"}, rows);
}

}  // namespace noxsim::io
