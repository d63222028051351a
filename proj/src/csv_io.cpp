#include "cutoffloc/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

namespace cutoffloc {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::optional<double> to_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

PointCloud read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_points_csv(in, path);
}

PointCloud read_points_csv(std::istream& in, const std::string& source) {
  std::vector<Point> pts;
  int dim = 0;
  bool seen_content = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = split(t);
    std::vector<double> vals;
    for (std::string_view f : fields) {
      const auto v = to_number(f);
      if (!v) break;
      vals.push_back(*v);
    }
    const auto where = source + ":" + std::to_string(lineno);
    if (vals.size() != fields.size()) {
      if (!seen_content) {  // header
        seen_content = true;
        continue;
      }
      throw IoError(where + ": not a number row");
    }
    seen_content = true;
    if (fields.size() != 1 && fields.size() != 2) throw IoError(where + ": expected 1 or 2 columns");
    const int d = static_cast<int>(fields.size());
    if (dim == 0) dim = d;
    if (d != dim) throw IoError(where + ": column count differs from earlier rows");
    if (!std::isfinite(vals[0]) || (d == 2 && !std::isfinite(vals[1]))) {
      throw IoError(where + ": coordinates must be finite");
    }
    pts.push_back({vals[0], d == 2 ? vals[1] : 0.0});
  }
  if (in.bad()) throw IoError("read error on " + source);
  return PointCloud(pts, dim == 1 ? 1 : 2);
}

void write_points_csv(std::ostream& out, const PointCloud& cloud,
                      const std::vector<std::string>& comments) {
  for (const std::string& c : comments) out << "# " << c << '\n';
  out << (cloud.dim() == 1 ? "x\n" : "x,y\n");
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    out << format_double(cloud[i].x);
    if (cloud.dim() == 2) out << ',' << format_double(cloud[i].y);
    out << '\n';
  }
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

double parse_double(std::string_view s, const std::string& what) {
  const auto v = to_number(s);
  if (!v) throw UsageError(what + " must be a number (got '" + std::string(s) + "')");
  return *v;
}

}  // namespace cutoffloc
