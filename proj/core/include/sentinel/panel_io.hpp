#pragma once

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>

#include "sentinel/surveillance.hpp"

namespace sentinel {

struct IngestOptions {
  // Regions known not to report. Their rows must carry count 0 and are kept
  // as excluded cells; a positive count raises ExcludedRegionError.
  std::set<std::string> excluded_regions;
};

// CSV with header `region,period,count,population`, comma separated, one
// cell per row. Errors carry the 1-based line number.
CountPanel parse_panel(std::istream& in, const IngestOptions& options = {});
CountPanel ingest(const std::filesystem::path& path, const IngestOptions& options = {});

// Inverse of parse_panel for panels whose excluded cells all belong to
// excluded regions. Populations are written in shortest round-trip form.
void write_panel(std::ostream& out, const CountPanel& panel);

inline constexpr std::string_view kPanelHeader = "region,period,count,population";

}  // namespace sentinel
