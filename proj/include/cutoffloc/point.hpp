#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cutoffloc {

/// Bad flags, bad arguments or a violated precondition.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A (norm, exponent) combination the requested solver does not handle.
class UnsupportedConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unreadable or malformed input file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A location in the plane. One-dimensional data is embedded with y = 0,
/// which leaves every l_p distance unchanged.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

enum class Norm { l1, l2, linf };

/// Norm selector plus exponent q >= 1; distances are ||y - x||_p^q.
struct MetricSpec {
  Norm norm = Norm::l2;
  double q = 1.0;

  MetricSpec() = default;
  MetricSpec(Norm n, double exponent);

  /// C^(1/q): the cutoff expressed as a radius in norm units.
  double radius(double cutoff) const;

  bool is(Norm n, double exponent) const { return norm == n && q == exponent; }
};

std::string to_string(Norm n);
Norm parse_norm(const std::string& s);

struct CutoffSpec {
  double C = 1.0;
  std::optional<double> alpha;

  CutoffSpec() = default;
  explicit CutoffSpec(double cutoff, std::optional<double> empty_factor = std::nullopt);
};

/// Either a point of the plane or the empty barycenter.
class ExtendedLocation {
 public:
  ExtendedLocation() = default;
  ExtendedLocation(Point p) : point_(p) {}  // NOLINT(google-explicit-constructor)

  static ExtendedLocation empty() { return ExtendedLocation(); }

  bool is_empty() const { return !point_.has_value(); }
  const Point& point() const;

  friend bool operator==(const ExtendedLocation&, const ExtendedLocation&) = default;

 private:
  std::optional<Point> point_;
};

/// Coordinates stored as separate x and y arrays so the distance kernels can
/// stream them. Iteration order is insertion order.
class PointCloud {
 public:
  explicit PointCloud(int dim = 2);
  PointCloud(std::span<const Point> pts, int dim = 2);

  void push_back(Point p);
  void reserve(std::size_t n);

  std::size_t size() const { return xs_.size(); }
  bool empty() const { return xs_.empty(); }
  int dim() const { return dim_; }

  Point operator[](std::size_t i) const { return {xs_[i], ys_[i]}; }

  std::span<const double> xs() const { return xs_; }
  std::span<const double> ys() const { return ys_; }

  std::vector<Point> points() const;

  /// Points at the given indices, in the order given.
  PointCloud subset(std::span<const std::size_t> idx) const;

 private:
  int dim_;
  std::vector<double> xs_;
  std::vector<double> ys_;
};

using IndexSet = std::vector<std::size_t>;

}  // namespace cutoffloc
