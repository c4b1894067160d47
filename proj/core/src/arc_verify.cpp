#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fractarc/arc.hpp"
#include "fractarc/errors.hpp"

namespace fractarc {

namespace {

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sum);
}

/// Nearest-neighbour distances against a cloud sorted on coordinate 0.
class SortedCloud {
 public:
  explicit SortedCloud(std::vector<std::vector<double>> points) : points_(std::move(points)) {
    std::sort(points_.begin(), points_.end());
  }

  double distance(const std::vector<double>& z) const {
    if (points_.empty()) return std::numeric_limits<double>::infinity();
    auto it = std::lower_bound(points_.begin(), points_.end(), z[0],
                               [](const std::vector<double>& p, double x) { return p[0] < x; });
    double best = std::numeric_limits<double>::infinity();
    for (auto up = it; up != points_.end() && up->front() - z[0] < best; ++up) best = std::min(best, euclidean(*up, z));
    for (auto down = it; down != points_.begin();) {
      --down;
      if (z[0] - down->front() >= best) break;
      best = std::min(best, euclidean(*down, z));
    }
    return best;
  }

  const std::vector<std::vector<double>>& points() const { return points_; }

 private:
  std::vector<std::vector<double>> points_;
};

}  // namespace

// -------------------------------------------------------------- evaluation

ArcPoint evaluate(const ArcApproximation& arc, double t, int k) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("parameter must lie in [0, 1]");
  if (k < 0) throw std::invalid_argument("resolution must be non-negative");
  if (k > arc.depth()) throw InsufficientDepth("evaluation needs generation " + std::to_string(k));
  const ArcCounts counts = arc.counts();
  const Rational exact_t = rational_from_double(t);
  std::size_t index = 0;
  for (int g = 1; g <= k; ++g) {
    const Cell& parent = arc.cells(g - 1).cells[index];
    const Rational step = (parent.param_hi - parent.param_lo) / static_cast<unsigned long>(counts.subdivisions);
    Rational offset = (exact_t - parent.param_lo) / step;
    mpz_class whole;
    mpz_fdiv_q(whole.get_mpz_t(), offset.get_num_mpz_t(), offset.get_den_mpz_t());
    std::size_t position = whole.fits_ulong_p() ? whole.get_ui() : counts.subdivisions - 1;
    position = std::min(position, counts.subdivisions - 1);
    if (position % 2 == 1) {
      const Connector& c = arc.connectors(g)[index * (counts.branching - 1) + (position - 1) / 2];
      const double u = Rational((exact_t - c.param_lo) / (c.param_hi - c.param_lo)).get_d();
      return ArcPoint{c.point_at(u), 0.0, true, t, g};
    }
    index = index * counts.branching + position / 2;
  }
  const Cell& cell = arc.cells(k).cells[index];
  return ArcPoint{to_doubles(cell.near_corner()), arc.cell_diameter(k), false, cell.param_lo.get_d(), k};
}

ContinuityModulus modulus_of_continuity(const ArcApproximation& arc, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  ContinuityModulus result;
  result.epsilon = epsilon;
  if (epsilon >= std::sqrt(static_cast<double>(arc.ambient_dimension()))) {
    result.vacuous = true;
    return result;
  }
  int big_k = 1;
  while (arc.cell_diameter(big_k) >= epsilon) ++big_k;
  if (big_k + 1 > arc.depth()) {
    throw InsufficientDepth("modulus for epsilon needs generation " + std::to_string(big_k + 1) + ", built " +
                            std::to_string(arc.depth()));
  }
  result.coarse_generation = big_k;
  result.delta_prime = arc.param_length(big_k + 1).get_d() / 2.0;
  for (int g = 1; g <= big_k; ++g) {
    for (const auto& c : arc.connectors(g)) result.lipschitz = std::max(result.lipschitz, c.lipschitz);
  }
  result.delta = result.delta_prime;
  if (result.lipschitz > 0.0) result.delta = std::min(result.delta, epsilon / (2.0 * result.lipschitz));
  return result;
}

ModulusCheck check_modulus(const ArcApproximation& arc, const ContinuityModulus& modulus, std::size_t pairs,
                           Sampler& sampler, int resolution) {
  ModulusCheck check;
  const std::size_t max_draws = 100 * pairs + 100;
  for (std::size_t draw = 0; check.pairs < pairs; ++draw) {
    if (draw == max_draws) throw std::runtime_error("modulus check could not find enough close anchor pairs");
    const double s = sampler.uniform();
    const double t = std::clamp(s + sampler.uniform(-modulus.delta, modulus.delta), 0.0, 1.0);
    const ArcPoint a = evaluate(arc, s, resolution);
    const ArcPoint b = evaluate(arc, t, resolution);
    const double separation = std::abs(a.anchor - b.anchor);
    if (separation >= modulus.delta) continue;
    ++check.pairs;
    const double distance = euclidean(a.point, b.point);
    check.max_distance = std::max(check.max_distance, distance);
    check.max_separation = std::max(check.max_separation, separation);
    if (distance >= modulus.epsilon) ++check.violations;
  }
  return check;
}

// ------------------------------------------------------------ injectivity

InjectivityReport verify_injectivity(const ArcApproximation& arc, int k) {
  if (k < 0 || k > arc.depth()) throw InsufficientDepth("injectivity check needs generation " + std::to_string(k));
  InjectivityReport report;
  report.depth = k;

  std::vector<const Connector*> all;
  for (int g = 1; g <= k; ++g) {
    for (const auto& c : arc.connectors(g)) all.push_back(&c);
  }
  report.connectors_checked = all.size();
  std::vector<LooseBounds> bounds;
  bounds.reserve(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (auto contact = polyline_self_contact(all[i]->vertices)) {
      report.pass = false;
      report.failure = "connector " + std::to_string(i) + " is not simple";
      return report;
    }
    bounds.push_back(loose_bounds(all[i]->vertices));
  }
  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return bounds[a].lo[0] < bounds[b].lo[0]; });
  for (std::size_t x = 0; x < order.size(); ++x) {
    const std::size_t i = order[x];
    for (std::size_t y = x + 1; y < order.size() && bounds[order[y]].lo[0] <= bounds[i].hi[0]; ++y) {
      const std::size_t j = order[y];
      if (!bounds[i].overlaps(bounds[j])) continue;
      if (polyline_contact(all[i]->vertices, all[j]->vertices)) {
        report.pass = false;
        report.crossing = std::minmax(i, j);
        report.failure = "connectors " + std::to_string(report.crossing->first) + " and " +
                         std::to_string(report.crossing->second) + " meet";
        return report;
      }
    }
  }

  const auto path = arc.traversal(k);
  report.traversal_vertices = path.size();
  if (auto contact = polyline_self_contact(path)) {
    report.pass = false;
    report.failure = "traversal segments " + std::to_string(contact->first_segment) + " and " +
                     std::to_string(contact->second_segment) + " meet";
    return report;
  }

  if (k >= 1) {
    const auto& cells = arc.cells(k).cells;
    std::vector<bool> seen(cells.size(), false);
    for (const auto& piece : arc.param_intervals(k)) {
      if (piece.status != ParamStatus::neglected) continue;
      if (piece.link >= cells.size() || seen[piece.link]) {
        report.pass = false;
        report.failure = "neglected intervals share a cell";
        return report;
      }
      seen[piece.link] = true;
      if (cells[piece.link].param_lo != piece.lo || cells[piece.link].param_hi != piece.hi) {
        report.pass = false;
        report.failure = "neglected interval does not match its cell";
        return report;
      }
    }
    std::vector<std::size_t> by_x(cells.size());
    std::iota(by_x.begin(), by_x.end(), 0);
    std::sort(by_x.begin(), by_x.end(),
              [&](std::size_t a, std::size_t b) { return cells[a].box.lo[0] < cells[b].box.lo[0]; });
    for (std::size_t x = 0; x < by_x.size(); ++x) {
      const Box& bi = cells[by_x[x]].box;
      for (std::size_t y = x + 1; y < by_x.size() && cells[by_x[y]].box.lo[0] <= bi.hi[0]; ++y) {
        if (bi.intersects(cells[by_x[y]].box)) {
          report.pass = false;
          report.failure = "cells " + std::to_string(by_x[x]) + " and " + std::to_string(by_x[y]) + " intersect";
          return report;
        }
      }
    }
  }
  return report;
}

// ------------------------------------------------------------ containment

ContainmentReport verify_containment(const ArcApproximation& arc, int k, std::span<const Address> samples) {
  if (k < 0 || k > arc.depth()) throw InsufficientDepth("containment check needs generation " + std::to_string(k));
  ContainmentReport report;
  report.depth = k;
  report.bound = arc.cell_diameter(k);
  const SortedCloud cloud(arc.vertex_cloud(k));
  for (const auto& address : samples) {
    const auto z = to_doubles(arc.address_point(address));
    report.max_distance = std::max(report.max_distance, cloud.distance(z));
    ++report.samples;
  }
  report.pass = report.max_distance <= report.bound * (1.0 + 1e-12);
  return report;
}

double vertex_cloud_hausdorff(const ArcApproximation& arc, int k) {
  if (k < 0 || k + 1 > arc.depth()) throw InsufficientDepth("Hausdorff distance needs generation " + std::to_string(k + 1));
  const SortedCloud coarse(arc.vertex_cloud(k));
  const SortedCloud fine(arc.vertex_cloud(k + 1));
  double h = 0.0;
  for (const auto& p : coarse.points()) h = std::max(h, fine.distance(p));
  for (const auto& p : fine.points()) h = std::max(h, coarse.distance(p));
  return h;
}

// --------------------------------------------------------------- counting

CountingReport verify_counting(const ArcApproximation& arc) {
  CountingReport report;
  auto fail = [&](std::string message) {
    report.pass = false;
    report.failures.push_back(std::move(message));
  };
  const ArcCounts counts = arc.counts();
  std::size_t expected_cells = 1;
  std::size_t cumulative = 0;
  std::vector<std::pair<Rational, Rational>> tiles;

  for (int k = 1; k <= arc.depth(); ++k) {
    const std::string gen = "generation " + std::to_string(k) + ": ";
    const auto& parents = arc.cells(k - 1).cells;
    const auto& cells = arc.cells(k).cells;
    const auto& joins = arc.connectors(k);
    expected_cells *= counts.branching;
    if (cells.size() != expected_cells) fail(gen + "cell count " + std::to_string(cells.size()));
    if (joins.size() != parents.size() * (counts.branching - 1)) fail(gen + "connector count");
    cumulative += joins.size();
    if (arc.cumulative_connectors(k) != cumulative) fail(gen + "cumulative connector count");

    const auto pieces = arc.param_intervals(k);
    if (pieces.size() != parents.size() * counts.subdivisions) fail(gen + "parameter interval count");
    const Rational piece_length = arc.param_length(k);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const auto& piece = pieces[i];
      const bool neglected = piece.position % 2 == 0;
      if ((piece.status == ParamStatus::neglected) != neglected) fail(gen + "used/neglected alternation");
      if (piece.hi - piece.lo != piece_length) fail(gen + "parameter interval length");
      if (i + 1 < pieces.size() && piece.position + 1 < counts.subdivisions && piece.hi != pieces[i + 1].lo) {
        fail(gen + "parameter intervals not contiguous");
      }
      if (piece.status == ParamStatus::used) {
        if (piece.link >= joins.size() || joins[piece.link].param_lo != piece.lo) fail(gen + "used interval link");
      }
    }

    for (std::size_t p = 0; p < parents.size() && cells.size() == expected_cells; ++p) {
      const Cell& parent = parents[p];
      const std::size_t first = p * counts.branching;
      for (std::size_t s = 0; s < counts.branching; ++s) {
        const Cell& child = cells[first + s];
        if (child.parent != p || child.rank != s + 1) fail(gen + "rank or parent index");
        if (!parent.box.contains(child.box)) fail(gen + "cell not nested in its parent");
        if (child.address.truncated(static_cast<std::size_t>(k - 1)) != parent.address) {
          fail(gen + "address does not extend the parent address");
        }
        if (s > 0) {
          const Cell& prev = cells[first + s - 1];
          const Rational a = squared_norm(prev.box.lo);
          const Rational b = squared_norm(child.box.lo);
          if (a > b || (a == b && !std::lexicographical_compare(prev.box.lo.begin(), prev.box.lo.end(),
                                                                 child.box.lo.begin(), child.box.lo.end()))) {
            fail(gen + "children not in distance order");
          }
        }
      }
      if (cells[first].near_corner() != parent.near_corner()) fail(gen + "first child misses the near corner");
      if (cells[first + counts.branching - 1].far_corner() != parent.far_corner()) {
        fail(gen + "last child misses the far corner");
      }
    }
    for (const auto& c : joins) {
      if (c.source >= cells.size() || c.target != c.source + 1 || c.target >= cells.size()) {
        fail(gen + "connector endpoints");
        continue;
      }
      if (c.vertices.front() != cells[c.source].far_corner() || c.vertices.back() != cells[c.target].near_corner()) {
        fail(gen + "connector does not join far corner to next near corner");
      }
      if (c.param_lo != cells[c.source].param_hi || c.param_hi != cells[c.target].param_lo) {
        fail(gen + "connector parameter interval out of place");
      }
      tiles.emplace_back(c.param_lo, c.param_hi);
    }
  }
  for (const auto& cell : arc.cells(arc.depth()).cells) tiles.emplace_back(cell.param_lo, cell.param_hi);
  std::sort(tiles.begin(), tiles.end());
  Rational cursor = 0;
  for (const auto& [lo, hi] : tiles) {
    if (lo != cursor || hi <= lo) {
      fail("parameter partition does not tile [0, 1]");
      break;
    }
    cursor = hi;
  }
  if (report.pass && cursor != 1) fail("parameter partition does not reach 1");
  return report;
}

}  // namespace fractarc
