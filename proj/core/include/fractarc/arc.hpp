#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fractarc/cantor.hpp"
#include "fractarc/geometry.hpp"
#include "fractarc/rational.hpp"
#include "fractarc/sampling.hpp"

namespace fractarc {

// Recursive Jordan-arc approximations threading the cells of E x Y.
//
// Generation k covers E x Y by t_k = 2^{k(n+1)} product boxes Q_s^k. Inside
// every generation-(k-1) box the 2^{n+1} sub-boxes are ordered by distance
// from the origin and consecutive ones are joined by a connector polyline from
// the far corner y_s to the near corner x_{s+1}. The parameter interval that
// belonged to the parent box is cut into 2^{n+2} - 1 equal pieces: odd pieces
// parametrize the connectors ("used"), even pieces are handed to the sub-boxes
// ("neglected") and are refined again at the next generation.

enum class ParamStatus { used, neglected };

struct ParamInterval {
  int depth = 0;
  /// Position among the children of the parent interval (0-based).
  std::size_t position = 0;
  Rational lo;
  Rational hi;
  ParamStatus status = ParamStatus::neglected;
  /// Connector index (used) or cell index (neglected) within generation `depth`.
  std::size_t link = 0;
};

struct Cell {
  int generation = 0;
  /// 1-based position in distance order among the children of `parent`.
  std::size_t rank = 1;
  /// Index of the parent cell in generation - 1 (0 for the root).
  std::size_t parent = 0;
  /// box.lo is the near corner x_s, box.hi the far corner y_s.
  Box box;
  Address address;
  /// The neglected parameter interval mapped into this cell.
  Rational param_lo;
  Rational param_hi;

  const ExactPoint& near_corner() const { return box.lo; }
  const ExactPoint& far_corner() const { return box.hi; }
};

/// All cells of one generation, in parameter order. Within a parent the
/// order is by distance from the origin, ties broken lexicographically by
/// the near corner.
struct CellComplex {
  int generation = 0;
  std::size_t ambient_dimension = 0;
  std::vector<Cell> cells;
};

struct Connector {
  /// Index within its generation, in parameter order.
  std::size_t id = 0;
  int generation = 0;
  /// Cell of generation - 1 that contains the connector.
  std::size_t parent = 0;
  /// Joined cells, as indices into generation `generation`.
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<ExactPoint> vertices;
  Rational param_lo;
  Rational param_hi;
  /// Arc length of the polyline.
  double length = 0.0;
  /// length / parameter length: the Lipschitz constant of the constant-speed
  /// parametrization over [param_lo, param_hi].
  double lipschitz = 0.0;

  /// Point at fraction u in [0, 1] of arc length.
  std::vector<double> point_at(double u) const;
};

struct RoutingPolicy {
  /// Try the straight segment y_s -> x_{s+1} before any detour.
  bool prefer_straight = true;
  /// Fractions of the local gap at which axis-aligned detours travel.
  std::vector<Rational> clearance_schedule = default_clearance_schedule();

  /// Reduced fractions p/q, 0 < p < q <= 12, ordered by q then p.
  static std::vector<Rational> default_clearance_schedule();
};

/// Counting constants for ambient dimension n + 1.
struct ArcCounts {
  std::size_t branching;     ///< 2^{n+1}: sub-cells per cell
  std::size_t subdivisions;  ///< 2^{n+2} - 1: parameter pieces per neglected interval

  static ArcCounts for_n(int n);
};

/// Generation-1 complex: the 2^{n+1} products of first-generation intervals of
/// E and n copies of Y, ordered by distance from the origin.
CellComplex build_first_generation(const RatioCantorSet& e, const SelfSimilarCantor& y, int n);

/// Splits a neglected interval into 2^{n+2} - 1 equal children. Even positions
/// are neglected and linked to sub-cell rank position/2 + 1 (stored as a
/// 0-based rank in `link`); odd positions are used by connector (position-1)/2.
std::vector<ParamInterval> subdivide_param_interval(const ParamInterval& interval, int n);

/// Joins consecutive cells of `ordered` inside `container` with pairwise
/// disjoint simple polylines that meet the cells only at their own end corners.
/// Throws RoutingFailed when the clearance schedule is exhausted.
std::vector<std::vector<ExactPoint>> route_connectors(std::span<const Cell> ordered, const Box& container,
                                                      const RoutingPolicy& policy = {});

/// Why a candidate connector was rejected, or nothing when it is admissible.
std::optional<std::string> connector_conflict(std::span<const ExactPoint> vertices, std::span<const Cell> ordered,
                                              std::size_t source, const Box& container,
                                              std::span<const std::vector<ExactPoint>> placed);

class ArcApproximation {
 public:
  /// Starts at generation 0 (the unit cube as a single cell). n >= 1.
  ArcApproximation(RatioCantorSet e, SelfSimilarCantor y, int n, RoutingPolicy policy = {},
                   int generation_budget = kDefaultGenerationBudget);

  /// Reassembles a model from stored generations (generation 0 included)
  /// without routing. Structural sizes are checked; geometry is not.
  static ArcApproximation from_parts(RatioCantorSet e, SelfSimilarCantor y, int n,
                                     std::vector<CellComplex> generations,
                                     std::vector<std::vector<Connector>> connectors,
                                     int generation_budget = kDefaultGenerationBudget);

  const RatioCantorSet& e() const { return e_; }
  const SelfSimilarCantor& y() const { return y_; }
  int n() const { return n_; }
  std::size_t ambient_dimension() const { return static_cast<std::size_t>(n_) + 1; }
  ArcCounts counts() const { return ArcCounts::for_n(n_); }
  int depth() const { return static_cast<int>(generations_.size()) - 1; }
  int generation_budget() const { return budget_; }

  /// Builds generation depth() + 1. Throws BudgetExceeded or RoutingFailed.
  void build_generation();
  void build_through(int k);

  const CellComplex& cells(int k) const;
  /// Connectors created at generation k (k >= 1).
  const std::vector<Connector>& connectors(int k) const;
  std::size_t cumulative_connectors(int k) const;
  /// The 2^{n+2}-1 children of every depth-(k-1) neglected interval, in order.
  std::vector<ParamInterval> param_intervals(int k) const;
  /// Length of every depth-k parameter interval: (2^{n+2} - 1)^{-k}.
  Rational param_length(int k) const;

  /// Side lengths of generation-k cells: s_k for E, r^k for each Y factor.
  ExactPoint cell_sides(int k) const;
  Rational cell_squared_diameter(int k) const;
  double cell_diameter(int k) const;

  /// Param-order polyline of Gamma_k, with each generation-k cell replaced by
  /// its diagonal x_s -> y_s.
  std::vector<ExactPoint> traversal(int k) const;
  /// Connector vertices of generations <= k plus both corners of every
  /// generation-k cell.
  std::vector<std::vector<double>> vertex_cloud(int k) const;

  /// Maps an address of E x Y (coordinate 0 in E, the rest in Y) to the near
  /// corner of its cell.
  ExactPoint address_point(const Address& address) const;

  /// Mutable access for tests that need deliberately broken fixtures.
  std::vector<Connector>& mutable_connectors(int k);

 private:
  ArcApproximation(RatioCantorSet e, SelfSimilarCantor y, int n, RoutingPolicy policy, int budget, bool);

  std::vector<Cell> subdivide(const Cell& parent, std::size_t parent_index, int k) const;

  RatioCantorSet e_;
  SelfSimilarCantor y_;
  int n_;
  RoutingPolicy policy_;
  int budget_;
  std::vector<CellComplex> generations_;
  std::vector<std::vector<Connector>> connectors_;  // connectors_[0] stays empty
};

/// Sorts cells by |near corner|^2, ties broken lexicographically on the near corner.
void order_by_distance(std::vector<Cell>& cells);

// ------------------------------------------------------------ evaluation

struct ArcPoint {
  std::vector<double> point;
  /// 0 when `exact`; otherwise the diameter of the cell holding f(t).
  double error_bound = 0.0;
  /// t fell on a connector, so the point is f(t).
  bool exact = false;
  /// Parameter whose image is `point`: t itself, or the left end of the
  /// neglected interval when the near corner of a cell is returned.
  double anchor = 0.0;
  /// Generation at which t was resolved.
  int depth = 0;
};

/// f(t) at resolution k. Used parameters map onto their connector; otherwise
/// the near corner of the generation-k cell is returned with its diameter as
/// the error bound. Requires 0 <= t <= 1 and k <= depth().
ArcPoint evaluate(const ArcApproximation& arc, double t, int k);

struct ContinuityModulus {
  double epsilon = 0.0;
  /// Least generation whose cells have diameter < epsilon.
  int coarse_generation = 0;
  double delta = 1.0;
  /// delta_{K+1} / 2.
  double delta_prime = 1.0;
  /// max Lipschitz constant over connectors of generations 1..K.
  double lipschitz = 0.0;
  bool vacuous = false;
};

/// delta = min(delta_{K+1}/2, epsilon / (2 L_K)). Vacuous (delta = 1) when
/// epsilon is at least the diameter of the unit cube. Throws InsufficientDepth
/// when generation K + 1 is not built.
ContinuityModulus modulus_of_continuity(const ArcApproximation& arc, double epsilon);

struct ModulusCheck {
  std::size_t pairs = 0;
  std::size_t violations = 0;
  double max_distance = 0.0;
  double max_separation = 0.0;
};

/// Draws parameter pairs until `pairs` of them have exactly evaluable anchors
/// closer than delta, evaluates those at resolution `resolution`, and counts
/// pairs whose images are epsilon or more apart.
ModulusCheck check_modulus(const ArcApproximation& arc, const ContinuityModulus& modulus, std::size_t pairs,
                           Sampler& sampler, int resolution);

// ---------------------------------------------------------- verification

struct InjectivityReport {
  int depth = 0;
  bool pass = true;
  std::size_t connectors_checked = 0;
  std::size_t traversal_vertices = 0;
  std::string failure;
  /// Global connector ids (generation order, then parameter order) of the
  /// first crossing pair, when the failure is a crossing.
  std::optional<std::pair<std::size_t, std::size_t>> crossing;
};

/// (i) connectors of generations <= k are simple and pairwise disjoint,
/// (ii) the depth-k traversal is a simple polyline, and
/// (iii) depth-k neglected intervals map to distinct, disjoint cells.
InjectivityReport verify_injectivity(const ArcApproximation& arc, int k);

struct ContainmentReport {
  int depth = 0;
  std::size_t samples = 0;
  double max_distance = 0.0;
  /// diam(Q^k)
  double bound = 0.0;
  bool pass = true;
};

/// dist(z, vertex cloud of Gamma_k) <= diam(Q^k) for every sampled z in E x Y.
ContainmentReport verify_containment(const ArcApproximation& arc, int k, std::span<const Address> samples);

/// Hausdorff distance between the vertex clouds of generations k and k + 1.
double vertex_cloud_hausdorff(const ArcApproximation& arc, int k);

struct CountingReport {
  bool pass = true;
  std::vector<std::string> failures;
};

/// Cell, connector and parameter-interval counts; used/neglected alternation;
/// the parameter partition tiling [0, 1]; order coherence and nesting.
CountingReport verify_counting(const ArcApproximation& arc);

}  // namespace fractarc
