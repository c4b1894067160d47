#include <algorithm>
#include <string>

#include "fractarc/arc.hpp"
#include "fractarc/errors.hpp"

namespace fractarc {

namespace {

/// Whether segment [p, q] touches `box` anywhere other than the allowed end.
enum class AllowedEnd { none, start, finish };

bool touches_outside(const ExactPoint& p, const ExactPoint& q, const Box& box, AllowedEnd allowed) {
  const auto span = clip_segment(p, q, box);
  if (!span) return false;
  switch (allowed) {
    case AllowedEnd::none:
      return true;
    case AllowedEnd::start:
      return !(span->t0 == 0 && span->t1 == 0);
    case AllowedEnd::finish:
      return !(span->t0 == 1 && span->t1 == 1);
  }
  return true;
}

/// Interior gap of the container along `axis` when the two children along it
/// have side `side`.
Rational gap_value(const Box& container, std::size_t axis, const Rational& side, const Rational& lambda) {
  const Rational lo = container.lo[axis] + side;
  const Rational hi = container.hi[axis] - side;
  return lo + lambda * (hi - lo);
}

bool bit_of(const Cell& cell, const Box& container, std::size_t axis) { return cell.box.lo[axis] != container.lo[axis]; }

std::vector<ExactPoint> detour(const Cell& source, const Cell& target, const Box& container, std::size_t a,
                               std::size_t b, const Rational& lambda_a, const Rational& lambda_b) {
  const std::size_t m = container.dimension();
  const ExactPoint& start = source.box.hi;
  const ExactPoint& finish = target.box.lo;
  std::vector<ExactPoint> path;
  auto push = [&](ExactPoint v) {
    if (path.empty() || path.back() != v) path.push_back(std::move(v));
  };
  ExactPoint v = start;
  push(v);
  v[a] = gap_value(container, a, source.box.hi[a] - source.box.lo[a], lambda_a);
  push(v);
  v[b] = gap_value(container, b, target.box.hi[b] - target.box.lo[b], lambda_b);
  push(v);
  for (std::size_t i = 0; i < m; ++i) {
    if (i != a && i != b) v[i] = finish[i];
  }
  push(v);
  if (a != b) v[a] = finish[a];
  push(v);
  push(finish);
  return path;
}

}  // namespace

std::optional<std::string> connector_conflict(std::span<const ExactPoint> vertices, std::span<const Cell> ordered,
                                              std::size_t source, const Box& container,
                                              std::span<const std::vector<ExactPoint>> placed) {
  if (vertices.size() < 2) return "connector needs at least two vertices";
  const std::size_t target = source + 1;
  if (target >= ordered.size()) return "source cell has no successor";
  if (vertices.front() != ordered[source].far_corner()) return "connector does not start at the far corner";
  if (vertices.back() != ordered[target].near_corner()) return "connector does not end at the next near corner";
  for (const auto& v : vertices) {
    if (!container.contains(v)) return "vertex leaves the parent cell";
  }
  if (polyline_self_contact(vertices)) return "connector is not simple";
  const std::size_t last = vertices.size() - 2;
  for (std::size_t s = 0; s + 1 < vertices.size(); ++s) {
    const ExactPoint& p = vertices[s];
    const ExactPoint& q = vertices[s + 1];
    for (std::size_t c = 0; c < ordered.size(); ++c) {
      AllowedEnd allowed = AllowedEnd::none;
      if (c == source && s == 0) allowed = AllowedEnd::start;
      if (c == target && s == last) allowed = AllowedEnd::finish;
      if (touches_outside(p, q, ordered[c].box, allowed)) {
        return "segment " + std::to_string(s) + " touches sibling cell " + std::to_string(c + 1);
      }
    }
  }
  for (std::size_t i = 0; i < placed.size(); ++i) {
    if (polyline_contact(vertices, placed[i])) return "meets connector " + std::to_string(i);
  }
  return std::nullopt;
}

std::vector<std::vector<ExactPoint>> route_connectors(std::span<const Cell> ordered, const Box& container,
                                                      const RoutingPolicy& policy) {
  std::vector<std::vector<ExactPoint>> routes;
  if (ordered.size() < 2) return routes;
  routes.reserve(ordered.size() - 1);
  const std::size_t m = container.dimension();
  const auto& schedule = policy.clearance_schedule;

  for (std::size_t s = 0; s + 1 < ordered.size(); ++s) {
    const Cell& source = ordered[s];
    const Cell& target = ordered[s + 1];
    std::optional<std::vector<ExactPoint>> chosen;
    if (policy.prefer_straight) {
      std::vector<ExactPoint> straight{source.far_corner(), target.near_corner()};
      if (!connector_conflict(straight, ordered, s, container, routes)) chosen = std::move(straight);
    }
    if (!chosen && !schedule.empty()) {
      std::vector<std::size_t> free_axes;
      std::vector<std::size_t> entry_axes;
      for (std::size_t i = 0; i < m; ++i) {
        if (!bit_of(source, container, i)) free_axes.push_back(i);
        if (bit_of(target, container, i)) entry_axes.push_back(i);
      }
      const std::size_t q = schedule.size();
      for (std::size_t a : free_axes) {
        for (std::size_t b : entry_axes) {
          for (std::size_t i = 0; i < q && !chosen; ++i) {
            for (std::size_t j = 0; j < q && !chosen; ++j) {
              const Rational& la = schedule[(i + s) % q];
              const Rational& lb = schedule[(j + 2 * s) % q];
              auto path = detour(source, target, container, a, b, la, lb);
              if (!connector_conflict(path, ordered, s, container, routes)) chosen = std::move(path);
            }
          }
          if (chosen) break;
        }
        if (chosen) break;
      }
    }
    if (!chosen) {
      throw RoutingFailed("no admissible connector from cell " + std::to_string(s + 1) + " to cell " +
                              std::to_string(s + 2),
                          s + 1, s + 2);
    }
    routes.push_back(std::move(*chosen));
  }
  return routes;
}

}  // namespace fractarc
