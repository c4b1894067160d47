#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fractarc/rational.hpp"

namespace fractarc {

/// Closed axis-aligned box [lo, hi] in the positive orthant. For such boxes the
/// nearest point to the origin is `lo` and the farthest is `hi`.
struct Box {
  ExactPoint lo;
  ExactPoint hi;

  std::size_t dimension() const { return lo.size(); }
  bool contains(const ExactPoint& p) const;
  bool contains(const Box& inner) const;
  /// Closed boxes share at least one point.
  bool intersects(const Box& other) const;
  Rational squared_diameter() const { return squared_distance(lo, hi); }
  double diameter() const;
};

/// Parameter range [t0, t1] on a segment p + t (q - p).
struct ParamSpan {
  Rational t0;
  Rational t1;

  bool is_point() const { return t0 == t1; }
};

/// Portion of the closed segment pq lying in the closed box, as a parameter range.
std::optional<ParamSpan> clip_segment(const ExactPoint& p, const ExactPoint& q, const Box& box);

/// Intersection of closed segments p1q1 and p2q2, as a parameter range on the first.
/// Handles collinear overlaps and degenerate (zero-length) segments.
std::optional<ParamSpan> segment_intersection(const ExactPoint& p1, const ExactPoint& q1,
                                              const ExactPoint& p2, const ExactPoint& q2);

/// Conservative double-precision bounding box, padded outward, for pruning.
struct LooseBounds {
  std::vector<double> lo;
  std::vector<double> hi;

  bool overlaps(const LooseBounds& other) const;
};

LooseBounds loose_bounds(std::span<const ExactPoint> points);

/// Exact intersection witness between two polylines.
struct PolylineContact {
  std::size_t first_segment = 0;
  std::size_t second_segment = 0;
};

/// First contact between two polylines, or nothing when they are disjoint.
std::optional<PolylineContact> polyline_contact(std::span<const ExactPoint> a, std::span<const ExactPoint> b);

/// A polyline is simple when non-adjacent segments are disjoint and adjacent
/// segments share only their common vertex. Returns the offending segment pair.
std::optional<PolylineContact> polyline_self_contact(std::span<const ExactPoint> vertices);

double polyline_length(std::span<const ExactPoint> vertices);

}  // namespace fractarc
