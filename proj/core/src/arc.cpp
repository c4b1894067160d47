#include "fractarc/arc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fractarc/errors.hpp"

namespace fractarc {

std::vector<double> Connector::point_at(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  const std::size_t dim = vertices.front().size();
  double remaining = u * length;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const auto a = to_doubles(vertices[i]);
    const auto b = to_doubles(vertices[i + 1]);
    double seg = 0.0;
    for (std::size_t c = 0; c < dim; ++c) seg += (b[c] - a[c]) * (b[c] - a[c]);
    seg = std::sqrt(seg);
    if (remaining <= seg || i + 2 == vertices.size()) {
      const double w = seg > 0.0 ? std::clamp(remaining / seg, 0.0, 1.0) : 0.0;
      std::vector<double> p(dim);
      for (std::size_t c = 0; c < dim; ++c) p[c] = a[c] + w * (b[c] - a[c]);
      return p;
    }
    remaining -= seg;
  }
  return to_doubles(vertices.back());
}

std::vector<Rational> RoutingPolicy::default_clearance_schedule() {
  std::vector<Rational> schedule;
  for (long q = 2; q <= 12; ++q) {
    for (long p = 1; p < q; ++p) {
      if (std::gcd(p, q) == 1) schedule.push_back(make_rational(p, q));
    }
  }
  return schedule;
}

ArcCounts ArcCounts::for_n(int n) {
  if (n < 1 || n > 16) throw std::invalid_argument("arc construction needs 1 <= n <= 16");
  const std::size_t branching = std::size_t{1} << (n + 1);
  return ArcCounts{branching, 2 * branching - 1};
}

void order_by_distance(std::vector<Cell>& cells) {
  std::vector<Rational> keys;
  keys.reserve(cells.size());
  for (const auto& c : cells) keys.push_back(squared_norm(c.box.lo));
  std::vector<std::size_t> order(cells.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return keys[a] < keys[b];
    return std::lexicographical_compare(cells[a].box.lo.begin(), cells[a].box.lo.end(), cells[b].box.lo.begin(),
                                        cells[b].box.lo.end());
  });
  std::vector<Cell> sorted;
  sorted.reserve(cells.size());
  for (auto i : order) sorted.push_back(std::move(cells[i]));
  cells = std::move(sorted);
}

std::vector<ParamInterval> subdivide_param_interval(const ParamInterval& interval, int n) {
  if (interval.status != ParamStatus::neglected) {
    throw std::invalid_argument("only neglected parameter intervals are subdivided");
  }
  const ArcCounts counts = ArcCounts::for_n(n);
  const Rational step = (interval.hi - interval.lo) / static_cast<unsigned long>(counts.subdivisions);
  std::vector<ParamInterval> children;
  children.reserve(counts.subdivisions);
  for (std::size_t p = 0; p < counts.subdivisions; ++p) {
    ParamInterval child;
    child.depth = interval.depth + 1;
    child.position = p;
    child.lo = interval.lo + step * static_cast<unsigned long>(p);
    child.hi = interval.lo + step * static_cast<unsigned long>(p + 1);
    child.status = (p % 2 == 0) ? ParamStatus::neglected : ParamStatus::used;
    child.link = (p % 2 == 0) ? p / 2 : (p - 1) / 2;
    children.push_back(std::move(child));
  }
  return children;
}

// -------------------------------------------------------- ArcApproximation

namespace {

int checked_budget(int n, int budget) {
  if (budget < 0) throw std::invalid_argument("generation budget must be non-negative");
  (void)ArcCounts::for_n(n);
  return budget;
}

Cell root_cell(std::size_t dimension) {
  Cell root;
  root.generation = 0;
  root.rank = 1;
  root.parent = 0;
  root.box.lo.assign(dimension, Rational(0));
  root.box.hi.assign(dimension, Rational(1));
  root.address.words.assign(dimension, BranchWord{});
  root.param_lo = 0;
  root.param_hi = 1;
  return root;
}

}  // namespace

ArcApproximation::ArcApproximation(RatioCantorSet e, SelfSimilarCantor y, int n, RoutingPolicy policy, int budget,
                                   bool)
    : e_(std::move(e)), y_(std::move(y)), n_(n), policy_(std::move(policy)), budget_(checked_budget(n, budget)) {}

ArcApproximation::ArcApproximation(RatioCantorSet e, SelfSimilarCantor y, int n, RoutingPolicy policy,
                                   int generation_budget)
    : ArcApproximation(std::move(e), std::move(y), n, std::move(policy), generation_budget, true) {
  CellComplex root{0, ambient_dimension(), {root_cell(ambient_dimension())}};
  generations_.push_back(std::move(root));
  connectors_.emplace_back();
}

ArcApproximation ArcApproximation::from_parts(RatioCantorSet e, SelfSimilarCantor y, int n,
                                              std::vector<CellComplex> generations,
                                              std::vector<std::vector<Connector>> connectors, int generation_budget) {
  ArcApproximation arc(std::move(e), std::move(y), n, RoutingPolicy{}, generation_budget, true);
  if (generations.empty()) throw std::invalid_argument("model has no generations");
  if (connectors.size() != generations.size()) {
    throw std::invalid_argument("model needs one connector list per generation");
  }
  const ArcCounts counts = arc.counts();
  for (std::size_t k = 0; k < generations.size(); ++k) {
    const auto& g = generations[k];
    if (g.generation != static_cast<int>(k)) throw std::invalid_argument("generations out of order");
    if (g.ambient_dimension != arc.ambient_dimension()) throw std::invalid_argument("ambient dimension mismatch");
    const std::size_t expected_cells = k == 0 ? 1 : generations[k - 1].cells.size() * counts.branching;
    if (g.cells.size() != expected_cells) throw std::invalid_argument("cell count does not match generation");
    const std::size_t expected_connectors = k == 0 ? 0 : generations[k - 1].cells.size() * (counts.branching - 1);
    if (connectors[k].size() != expected_connectors) {
      throw std::invalid_argument("connector count does not match generation");
    }
    for (const auto& c : g.cells) {
      if (c.box.lo.size() != arc.ambient_dimension() || c.box.hi.size() != arc.ambient_dimension()) {
        throw std::invalid_argument("cell corner has the wrong dimension");
      }
    }
    for (auto& conn : connectors[k]) {
      if (conn.vertices.size() < 2) throw std::invalid_argument("connector needs two vertices");
      for (const auto& v : conn.vertices) {
        if (v.size() != arc.ambient_dimension()) throw std::invalid_argument("connector vertex dimension mismatch");
      }
      conn.length = polyline_length(conn.vertices);
      conn.lipschitz = conn.length / Rational(conn.param_hi - conn.param_lo).get_d();
    }
  }
  arc.generations_ = std::move(generations);
  arc.connectors_ = std::move(connectors);
  return arc;
}

std::vector<Cell> ArcApproximation::subdivide(const Cell& parent, std::size_t parent_index, int k) const {
  const std::size_t m = ambient_dimension();
  const ArcCounts counts = this->counts();
  const ExactPoint sides = cell_sides(k);
  std::vector<Cell> children;
  children.reserve(counts.branching);
  for (std::size_t mask = 0; mask < counts.branching; ++mask) {
    Cell child;
    child.generation = k;
    child.parent = parent_index;
    child.box.lo.resize(m);
    child.box.hi.resize(m);
    child.address = parent.address;
    for (std::size_t i = 0; i < m; ++i) {
      const bool right = (mask >> i) & 1U;
      child.box.lo[i] = right ? Rational(parent.box.hi[i] - sides[i]) : parent.box.lo[i];
      child.box.hi[i] = child.box.lo[i] + sides[i];
      child.address.words[i].push_back(right ? 1 : 0);
    }
    children.push_back(std::move(child));
  }
  order_by_distance(children);
  const Rational step = (parent.param_hi - parent.param_lo) / static_cast<unsigned long>(counts.subdivisions);
  for (std::size_t s = 0; s < children.size(); ++s) {
    children[s].rank = s + 1;
    children[s].param_lo = parent.param_lo + step * static_cast<unsigned long>(2 * s);
    children[s].param_hi = children[s].param_lo + step;
  }
  return children;
}

void ArcApproximation::build_generation() {
  const int k = depth() + 1;
  const long long exponent = static_cast<long long>(k) * static_cast<long long>(ambient_dimension());
  if (exponent > budget_) {
    throw BudgetExceeded("arc cell budget exceeded: 2^{k(n+1)} cells", static_cast<int>(exponent), budget_);
  }
  if (k > e_.generation_budget()) throw BudgetExceeded("E generation budget exceeded", k, e_.generation_budget());

  const auto& parents = generations_.back().cells;
  const ArcCounts counts = this->counts();
  CellComplex next{k, ambient_dimension(), {}};
  next.cells.reserve(parents.size() * counts.branching);
  std::vector<Connector> joins;
  joins.reserve(parents.size() * (counts.branching - 1));

  for (std::size_t p = 0; p < parents.size(); ++p) {
    const Cell& parent = parents[p];
    std::vector<Cell> children = subdivide(parent, p, k);
    std::vector<std::vector<ExactPoint>> routes;
    try {
      routes = route_connectors(children, parent.box, policy_);
    } catch (const RoutingFailed& err) {
      throw RoutingFailed(std::string(err.what()) + " in generation " + std::to_string(k) + " parent cell " +
                              std::to_string(p),
                          err.source_rank(), err.target_rank());
    }
    const Rational step = (parent.param_hi - parent.param_lo) / static_cast<unsigned long>(counts.subdivisions);
    const std::size_t base = next.cells.size();
    for (std::size_t s = 0; s < routes.size(); ++s) {
      Connector c;
      c.id = joins.size();
      c.generation = k;
      c.parent = p;
      c.source = base + s;
      c.target = base + s + 1;
      c.vertices = std::move(routes[s]);
      c.param_lo = parent.param_lo + step * static_cast<unsigned long>(2 * s + 1);
      c.param_hi = c.param_lo + step;
      c.length = polyline_length(c.vertices);
      c.lipschitz = c.length / step.get_d();
      joins.push_back(std::move(c));
    }
    for (auto& child : children) next.cells.push_back(std::move(child));
  }
  generations_.push_back(std::move(next));
  connectors_.push_back(std::move(joins));
}

void ArcApproximation::build_through(int k) {
  while (depth() < k) build_generation();
}

const CellComplex& ArcApproximation::cells(int k) const {
  if (k < 0 || k > depth()) throw std::out_of_range("generation not built");
  return generations_[static_cast<std::size_t>(k)];
}

const std::vector<Connector>& ArcApproximation::connectors(int k) const {
  if (k < 0 || k > depth()) throw std::out_of_range("generation not built");
  return connectors_[static_cast<std::size_t>(k)];
}

std::vector<Connector>& ArcApproximation::mutable_connectors(int k) {
  if (k < 0 || k > depth()) throw std::out_of_range("generation not built");
  return connectors_[static_cast<std::size_t>(k)];
}

std::size_t ArcApproximation::cumulative_connectors(int k) const {
  std::size_t total = 0;
  for (int g = 1; g <= k; ++g) total += connectors(g).size();
  return total;
}

std::vector<ParamInterval> ArcApproximation::param_intervals(int k) const {
  if (k < 1 || k > depth()) throw std::out_of_range("parameter depth not built");
  const auto& parents = cells(k - 1).cells;
  const ArcCounts counts = this->counts();
  std::vector<ParamInterval> out;
  out.reserve(parents.size() * counts.subdivisions);
  for (std::size_t p = 0; p < parents.size(); ++p) {
    ParamInterval parent{k - 1, 0, parents[p].param_lo, parents[p].param_hi, ParamStatus::neglected, p};
    for (auto& child : subdivide_param_interval(parent, n_)) {
      child.link = child.status == ParamStatus::neglected ? p * counts.branching + child.link
                                                          : p * (counts.branching - 1) + child.link;
      out.push_back(std::move(child));
    }
  }
  return out;
}

Rational ArcApproximation::param_length(int k) const {
  return 1 / power(Rational(static_cast<unsigned long>(counts().subdivisions)), static_cast<unsigned>(k));
}

ExactPoint ArcApproximation::cell_sides(int k) const {
  ExactPoint sides(ambient_dimension());
  sides[0] = e_.length(k);
  const Rational yk = y_.length(k);
  for (std::size_t i = 1; i < sides.size(); ++i) sides[i] = yk;
  return sides;
}

Rational ArcApproximation::cell_squared_diameter(int k) const { return squared_norm(cell_sides(k)); }

double ArcApproximation::cell_diameter(int k) const { return std::sqrt(cell_squared_diameter(k).get_d()); }

namespace {

void append_vertex(std::vector<ExactPoint>& path, const ExactPoint& v) {
  if (path.empty() || path.back() != v) path.push_back(v);
}

}  // namespace

std::vector<ExactPoint> ArcApproximation::traversal(int k) const {
  if (k < 0 || k > depth()) throw std::out_of_range("generation not built");
  const ArcCounts counts = this->counts();
  std::vector<ExactPoint> path;
  // Depth-first walk in parameter order.
  auto walk = [&](auto&& self, int g, std::size_t index) -> void {
    if (g == k) {
      const Cell& cell = generations_[g].cells[index];
      append_vertex(path, cell.box.lo);
      append_vertex(path, cell.box.hi);
      return;
    }
    const std::size_t first_child = index * counts.branching;
    const std::size_t first_join = index * (counts.branching - 1);
    for (std::size_t s = 0; s < counts.branching; ++s) {
      self(self, g + 1, first_child + s);
      if (s + 1 < counts.branching) {
        for (const auto& v : connectors_[g + 1][first_join + s].vertices) append_vertex(path, v);
      }
    }
  };
  walk(walk, 0, 0);
  return path;
}

std::vector<std::vector<double>> ArcApproximation::vertex_cloud(int k) const {
  std::vector<std::vector<double>> cloud;
  for (int g = 1; g <= k; ++g) {
    for (const auto& c : connectors(g)) {
      for (const auto& v : c.vertices) cloud.push_back(to_doubles(v));
    }
  }
  for (const auto& cell : cells(k).cells) {
    cloud.push_back(to_doubles(cell.box.lo));
    cloud.push_back(to_doubles(cell.box.hi));
  }
  return cloud;
}

ExactPoint ArcApproximation::address_point(const Address& address) const {
  if (address.dimension() != ambient_dimension() || !address.consistent()) {
    throw std::invalid_argument("address does not match the ambient dimension");
  }
  ExactPoint p(ambient_dimension());
  p[0] = e_.point(address.words[0]);
  for (std::size_t i = 1; i < p.size(); ++i) p[i] = y_.point(address.words[i]);
  return p;
}

// ------------------------------------------------------------ first generation

CellComplex build_first_generation(const RatioCantorSet& e, const SelfSimilarCantor& y, int n) {
  ArcApproximation arc(e, y, n, RoutingPolicy{}, std::max(e.generation_budget(), n + 1));
  const std::size_t m = arc.ambient_dimension();
  // Sub-cells only; connectors are not routed here.
  CellComplex complex{1, m, {}};
  const ArcCounts counts = arc.counts();
  const Rational s1 = e.length(1);
  const Rational r1 = y.length(1);
  for (std::size_t mask = 0; mask < counts.branching; ++mask) {
    Cell cell;
    cell.generation = 1;
    cell.parent = 0;
    cell.box.lo.resize(m);
    cell.box.hi.resize(m);
    cell.address.words.assign(m, BranchWord{});
    for (std::size_t i = 0; i < m; ++i) {
      const bool right = (mask >> i) & 1U;
      const Rational& side = i == 0 ? s1 : r1;
      cell.box.lo[i] = right ? Rational(1 - side) : Rational(0);
      cell.box.hi[i] = cell.box.lo[i] + side;
      cell.address.words[i].push_back(right ? 1 : 0);
    }
    complex.cells.push_back(std::move(cell));
  }
  order_by_distance(complex.cells);
  const Rational step = 1 / Rational(static_cast<unsigned long>(counts.subdivisions));
  for (std::size_t s = 0; s < complex.cells.size(); ++s) {
    complex.cells[s].rank = s + 1;
    complex.cells[s].param_lo = step * static_cast<unsigned long>(2 * s);
    complex.cells[s].param_hi = complex.cells[s].param_lo + step;
  }
  return complex;
}

}  // namespace fractarc
