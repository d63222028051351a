#pragma once

// Points CSV: one point per line, "x,y" or "x" for 1-D data. An optional
// non-numeric header line and '#' comment lines are skipped.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cutoffloc/point.hpp"

namespace cutoffloc {

/// Throws IoError on unreadable files and malformed rows.
PointCloud read_points_csv(const std::string& path);
PointCloud read_points_csv(std::istream& in, const std::string& source = "<stream>");

/// Writes comment lines (without the leading '#'), a header and the points.
void write_points_csv(std::ostream& out, const PointCloud& cloud,
                      const std::vector<std::string>& comments = {});

/// Shortest round-trip decimal form of v.
std::string format_double(double v);

/// Strict full-string number parse; throws UsageError naming `what`.
double parse_double(std::string_view s, const std::string& what);

}  // namespace cutoffloc
