#include "sentinel/panel_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "sentinel/errors.hpp"

namespace sentinel {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::uint64_t parse_count(std::string_view field, std::size_t line) {
  if (field.empty()) throw ValidationError("missing count", line);
  if (field.front() == '-') {
    throw ValidationError("count must be a non-negative integer, got '" + std::string(field) + "'",
                          line);
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("count is not an integer: '" + std::string(field) + "'", line);
  }
  return value;
}

double parse_population(std::string_view field, std::size_t line) {
  if (field.empty()) throw ValidationError("missing population", line);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("population is not a number: '" + std::string(field) + "'", line);
  }
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError("population must be positive, got '" + std::string(field) + "'", line);
  }
  return value;
}

}  // namespace

CountPanel parse_panel(std::istream& in, const IngestOptions& options) {
  std::string raw;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<Cell> cells;
  std::set<CellKey> seen;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kPanelHeader) {
        throw ParseError("expected header '" + std::string(kPanelHeader) + "'", line_no);
      }
      header_seen = true;
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != 4) {
      throw ParseError("expected 4 fields, found " + std::to_string(fields.size()), line_no);
    }
    Cell cell;
    cell.region_id = std::string(fields[0]);
    cell.period_id = std::string(fields[1]);
    if (cell.region_id.empty()) throw ValidationError("missing region", line_no);
    if (cell.period_id.empty()) throw ValidationError("missing period", line_no);
    cell.count = parse_count(fields[2], line_no);
    cell.population = parse_population(fields[3], line_no);

    if (options.excluded_regions.contains(cell.region_id)) {
      if (cell.count > 0) {
        throw ExcludedRegionError("region '" + cell.region_id +
                                      "' is excluded but reports " + std::to_string(cell.count) +
                                      " cases",
                                  line_no);
      }
      cell.included = false;
    }
    if (!seen.insert(cell.key()).second) {
      throw DuplicateKeyError(
          "duplicate cell (" + cell.region_id + ", " + cell.period_id + ")", line_no);
    }
    cells.push_back(std::move(cell));
  }
  if (!header_seen) throw ParseError("input is empty (no header)", 0);
  if (cells.empty()) throw EmptyPanelError("panel has no rows after the header");
  return CountPanel(std::move(cells));
}

CountPanel ingest(const std::filesystem::path& path, const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
  return parse_panel(in, options);
}

void write_panel(std::ostream& out, const CountPanel& panel) {
  out << kPanelHeader << '\n';
  char buffer[64];
  for (const auto& c : panel.cells()) {
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, c.population);
    out << c.region_id << ',' << c.period_id << ',' << c.count << ','
        << std::string_view(buffer, static_cast<std::size_t>(ptr - buffer)) << '\n';
  }
}

}  // namespace sentinel
