#include "fractarc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fractarc {

bool Box::contains(const ExactPoint& p) const {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (p[i] < lo[i] || p[i] > hi[i]) return false;
  }
  return true;
}

bool Box::contains(const Box& inner) const {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (inner.lo[i] < lo[i] || inner.hi[i] > hi[i]) return false;
  }
  return true;
}

bool Box::intersects(const Box& other) const {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (other.hi[i] < lo[i] || other.lo[i] > hi[i]) return false;
  }
  return true;
}

double Box::diameter() const { return std::sqrt(squared_diameter().get_d()); }

std::optional<ParamSpan> clip_segment(const ExactPoint& p, const ExactPoint& q, const Box& box) {
  Rational t0 = 0, t1 = 1;
  Rational d, a, b;
  for (std::size_t i = 0; i < p.size(); ++i) {
    d = q[i] - p[i];
    if (d == 0) {
      if (p[i] < box.lo[i] || p[i] > box.hi[i]) return std::nullopt;
      continue;
    }
    a = (box.lo[i] - p[i]) / d;
    b = (box.hi[i] - p[i]) / d;
    if (a > b) std::swap(a, b);
    if (a > t0) t0 = a;
    if (b < t1) t1 = b;
    if (t0 > t1) return std::nullopt;
  }
  return ParamSpan{t0, t1};
}

namespace {

bool is_zero(const ExactPoint& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; });
}

ExactPoint difference(const ExactPoint& a, const ExactPoint& b) {
  ExactPoint out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Rational dot(const ExactPoint& a, const ExactPoint& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// All 2x2 minors of [u v] vanish.
bool parallel(const ExactPoint& u, const ExactPoint& v) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      if (u[i] * v[j] != u[j] * v[i]) return false;
    }
  }
  return true;
}

bool on_segment(const ExactPoint& x, const ExactPoint& p, const ExactPoint& q) {
  const ExactPoint d = difference(q, p);
  const ExactPoint w = difference(x, p);
  if (is_zero(d)) return is_zero(w);
  if (!parallel(d, w)) return false;
  const Rational t = dot(w, d) / dot(d, d);
  return t >= 0 && t <= 1;
}

}  // namespace

std::optional<ParamSpan> segment_intersection(const ExactPoint& p1, const ExactPoint& q1,
                                              const ExactPoint& p2, const ExactPoint& q2) {
  const ExactPoint d1 = difference(q1, p1);
  const ExactPoint d2 = difference(q2, p2);
  const ExactPoint w = difference(p2, p1);

  if (is_zero(d1)) {
    if (on_segment(p1, p2, q2)) return ParamSpan{Rational(0), Rational(0)};
    return std::nullopt;
  }
  const Rational dd = dot(d1, d1);
  if (is_zero(d2)) {
    if (!on_segment(p2, p1, q1)) return std::nullopt;
    Rational t = dot(w, d1) / dd;
    return ParamSpan{t, t};
  }

  if (parallel(d1, d2)) {
    if (!parallel(d1, w)) return std::nullopt;
    Rational ta = dot(w, d1) / dd;
    Rational tb = dot(difference(q2, p1), d1) / dd;
    if (ta > tb) std::swap(ta, tb);
    Rational lo = ta > 0 ? ta : Rational(0);
    Rational hi = tb < 1 ? tb : Rational(1);
    if (lo > hi) return std::nullopt;
    return ParamSpan{lo, hi};
  }

  // Solve t d1 - u d2 = w on a coordinate pair with a non-zero minor.
  const std::size_t n = d1.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational det = d2[i] * d1[j] - d1[i] * d2[j];
      if (det == 0) continue;
      Rational t = (d2[i] * w[j] - w[i] * d2[j]) / det;
      Rational u = (d1[i] * w[j] - w[i] * d1[j]) / det;
      if (t < 0 || t > 1 || u < 0 || u > 1) return std::nullopt;
      for (std::size_t c = 0; c < n; ++c) {
        if (p1[c] + t * d1[c] != p2[c] + u * d2[c]) return std::nullopt;
      }
      return ParamSpan{t, t};
    }
  }
  return std::nullopt;
}

bool LooseBounds::overlaps(const LooseBounds& other) const {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (other.hi[i] < lo[i] || other.lo[i] > hi[i]) return false;
  }
  return true;
}

LooseBounds loose_bounds(std::span<const ExactPoint> points) {
  if (points.empty()) throw std::invalid_argument("bounds of an empty point set");
  const std::size_t n = points.front().size();
  LooseBounds b{std::vector<double>(n, INFINITY), std::vector<double>(n, -INFINITY)};
  for (const auto& p : points) {
    for (std::size_t i = 0; i < n; ++i) {
      const double v = p[i].get_d();
      b.lo[i] = std::min(b.lo[i], v);
      b.hi[i] = std::max(b.hi[i], v);
    }
  }
  // get_d truncates; pad by a relative margin far above its error.
  for (std::size_t i = 0; i < n; ++i) {
    b.lo[i] -= 1e-12 * (1.0 + std::abs(b.lo[i]));
    b.hi[i] += 1e-12 * (1.0 + std::abs(b.hi[i]));
  }
  return b;
}

std::optional<PolylineContact> polyline_contact(std::span<const ExactPoint> a, std::span<const ExactPoint> b) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("polyline needs two vertices");
  if (!loose_bounds(a).overlaps(loose_bounds(b))) return std::nullopt;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    const LooseBounds sa = loose_bounds(a.subspan(i, 2));
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      if (!sa.overlaps(loose_bounds(b.subspan(j, 2)))) continue;
      if (segment_intersection(a[i], a[i + 1], b[j], b[j + 1])) return PolylineContact{i, j};
    }
  }
  return std::nullopt;
}

std::optional<PolylineContact> polyline_self_contact(std::span<const ExactPoint> v) {
  if (v.size() < 2) throw std::invalid_argument("polyline needs two vertices");
  const std::size_t segments = v.size() - 1;
  std::vector<LooseBounds> bounds;
  bounds.reserve(segments);
  for (std::size_t i = 0; i < segments; ++i) {
    if (v[i] == v[i + 1]) return PolylineContact{i, i};
    bounds.push_back(loose_bounds(v.subspan(i, 2)));
  }
  // Sweep along the first axis so only overlapping candidates are tested exactly.
  std::vector<std::size_t> order(segments);
  for (std::size_t i = 0; i < segments; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return bounds[a].lo[0] < bounds[b].lo[0]; });
  std::optional<PolylineContact> first;
  for (std::size_t x = 0; x < segments; ++x) {
    const std::size_t i = order[x];
    for (std::size_t y = x + 1; y < segments; ++y) {
      const std::size_t j = order[y];
      if (bounds[j].lo[0] > bounds[i].hi[0]) break;
      if (!bounds[i].overlaps(bounds[j])) continue;
      const std::size_t a = std::min(i, j), b = std::max(i, j);
      auto hit = segment_intersection(v[a], v[a + 1], v[b], v[b + 1]);
      if (!hit) continue;
      // Consecutive segments may meet only at their shared vertex.
      if (b == a + 1 && hit->t0 == 1 && hit->t1 == 1) continue;
      PolylineContact contact{a, b};
      if (!first || std::pair(a, b) < std::pair(first->first_segment, first->second_segment)) first = contact;
    }
  }
  return first;
}

double polyline_length(std::span<const ExactPoint> vertices) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    total += std::sqrt(squared_distance(vertices[i], vertices[i + 1]).get_d());
  }
  return total;
}

}  // namespace fractarc
