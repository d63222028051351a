#include "cutoffloc/point.hpp"

#include <cmath>
#include <limits>

namespace cutoffloc {

MetricSpec::MetricSpec(Norm n, double exponent) : norm(n), q(exponent) {
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw UsageError("exponent q must be a finite number >= 1");
  }
}

double MetricSpec::radius(double cutoff) const {
  if (q == 1.0) return cutoff;
  if (q == 2.0) return std::sqrt(cutoff);
  return std::pow(cutoff, 1.0 / q);
}

std::string to_string(Norm n) {
  switch (n) {
    case Norm::l1: return "1";
    case Norm::l2: return "2";
    case Norm::linf: return "inf";
  }
  return "?";
}

Norm parse_norm(const std::string& s) {
  if (s == "1") return Norm::l1;
  if (s == "2") return Norm::l2;
  if (s == "inf" || s == "Inf" || s == "INF") return Norm::linf;
  throw UsageError("norm must be one of 1, 2, inf (got '" + s + "')");
}

CutoffSpec::CutoffSpec(double cutoff, std::optional<double> empty_factor)
    : C(cutoff), alpha(empty_factor) {
  if (!(C > 0.0) || !std::isfinite(C)) throw UsageError("cutoff C must be positive and finite");
  if (alpha && (!(*alpha > 0.0) || !std::isfinite(*alpha))) {
    throw UsageError("alpha must be positive and finite");
  }
}

const Point& ExtendedLocation::point() const {
  if (!point_) throw UsageError("location is the empty barycenter");
  return *point_;
}

PointCloud::PointCloud(int dim) : dim_(dim) {
  if (dim != 1 && dim != 2) throw UsageError("dimension must be 1 or 2");
}

PointCloud::PointCloud(std::span<const Point> pts, int dim) : PointCloud(dim) {
  reserve(pts.size());
  for (const Point& p : pts) push_back(p);
}

void PointCloud::push_back(Point p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw UsageError("point coordinates must be finite");
  }
  if (dim_ == 1 && p.y != 0.0) throw UsageError("one-dimensional cloud needs y = 0");
  xs_.push_back(p.x);
  ys_.push_back(p.y);
}

void PointCloud::reserve(std::size_t n) {
  xs_.reserve(n);
  ys_.reserve(n);
}

std::vector<Point> PointCloud::points() const {
  std::vector<Point> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i]);
  return out;
}

PointCloud PointCloud::subset(std::span<const std::size_t> idx) const {
  PointCloud out(dim_);
  out.reserve(idx.size());
  for (std::size_t i : idx) {
    if (i >= size()) throw UsageError("subset index out of range");
    out.xs_.push_back(xs_[i]);
    out.ys_.push_back(ys_[i]);
  }
  return out;
}

}  // namespace cutoffloc
