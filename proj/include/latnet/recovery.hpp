#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latnet/lattice.hpp"
#include "latnet/network.hpp"

namespace latnet {

/// Restriction of f (k × k^N) to {a, b}^N, with a ~ δ_2^1 and b ~ δ_2^2:
/// M_ab = M ∏_{j=0}^{N-1} (I_{2^j} ⊗ δ_k[a, b]).
struct PairRestriction {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t arity = 0;
  LogicalMatrix matrix;
};

PairRestriction restrict_pair(const LogicalMatrix& m, std::size_t k, std::size_t a, std::size_t b);

/// M_ab W_[2,2^{i-1}] (1, -1)^T for 1 ≤ i ≤ N: column differences between
/// x_i = a and x_i = b with the other variables fixed (k × 2^{N-1}).
IntMatrix pair_diff(const PairRestriction& pr, std::size_t i);

enum class PairCondition {
  values_in_pair,   // (12a)
  monotone_steps,   // (12b)
  reproducing,      // (12c)
};

const char* to_string(PairCondition c);

struct PairTest {
  bool passed = true;
  std::optional<PairCondition> failed;
  /// Offending column of M_ab (12a, 12c) or of M_ab^i (12b).
  std::size_t column = 0;
  /// Variable i (1-based) for 12b failures.
  std::size_t variable = 0;
};

/// Conditions (12a) and (12b).
PairTest monotone_pair_test(const PairRestriction& pr);
/// (12a), (12b) and (12c).
PairTest comparable_pair_test(const PairRestriction& pr);

class ComparabilityGraph {
 public:
  explicit ComparabilityGraph(std::size_t k) : k_(k), adj_(k * k, false) {}
  static ComparabilityGraph complete(std::size_t k);

  std::size_t size() const noexcept { return k_; }
  bool adjacent(std::size_t a, std::size_t b) const { return adj_[a * k_ + b]; }
  void add_edge(std::size_t a, std::size_t b);
  void remove_edge(std::size_t a, std::size_t b);
  /// Sorted (a < b).
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  friend bool operator==(const ComparabilityGraph&, const ComparabilityGraph&) = default;

 private:
  std::size_t k_;
  std::vector<bool> adj_;
};

/// Edge-wise conjunction.
ComparabilityGraph operator&(const ComparabilityGraph& x, const ComparabilityGraph& y);

enum class PairMode { monotone, comparable };

const char* to_string(PairMode m);

ComparabilityGraph component_graph(const LogicalMatrix& component, std::size_t k, PairMode mode);

struct GraphConjunction {
  std::vector<ComparabilityGraph> per_component;
  ComparabilityGraph conjunction;
};

/// One graph per component (dumb variables expected to be removed already)
/// and their conjunction.
GraphConjunction comparability_graph(const std::vector<LogicalMatrix>& components, std::size_t k, PairMode mode);

/// Directed edges a → b meaning a < b.
class Orientation {
 public:
  explicit Orientation(std::size_t k) : k_(k), arc_(k * k, false) {}

  std::size_t size() const noexcept { return k_; }
  bool arc(std::size_t a, std::size_t b) const { return arc_[a * k_ + b]; }
  void set_arc(std::size_t a, std::size_t b) { arc_[a * k_ + b] = true; }
  std::vector<std::pair<std::size_t, std::size_t>> arcs() const;

  /// Reflexive closure of the arcs, for lattice_from_order.
  Relation as_order() const;
  /// Some linear extension of the arcs (Kahn's algorithm, smallest index
  /// first).
  std::vector<std::size_t> topological_order() const;

  /// Checks that every edge of `g` is oriented exactly once, no non-edge is
  /// oriented, and a → b → c implies a → c. Returns a violating triple.
  std::optional<std::vector<std::size_t>> transitivity_violation(const ComparabilityGraph& g) const;

 private:
  std::size_t k_;
  std::vector<bool> arc_;
};

enum class OrientMethod { refinement, implication_classes };

const char* to_string(OrientMethod m);

struct OrientResult {
  bool ok = false;
  std::optional<Orientation> orientation;
  OrientMethod method = OrientMethod::refinement;
  /// Ordered partition classes produced by the pivot refinement (singletons
  /// when it succeeded).
  std::vector<std::vector<std::size_t>> refinement;
  /// For failures: a forcing triple (a, b, c) with a–b, b–c edges and a–c
  /// missing that closes a contradictory implication chain.
  std::vector<std::size_t> witness;
};

/// Ordered vertex-partition refinement from the first vertex as source,
/// verified post hoc; falls back to implication-class orientation when the
/// refinement stalls or yields a non-transitive result.
OrientResult transitive_orient(const ComparabilityGraph& g);

/// The pivot refinement alone. Classes are refined until singletons or
/// until no pivot splits anything.
std::vector<std::vector<std::size_t>> refine_partition(const ComparabilityGraph& g, std::size_t source = 0);

/// Implication-class (Γ forcing) transitive orientation. Exact for any graph.
OrientResult orient_by_implication(const ComparabilityGraph& g);

/// Calls `visit` on transitive orientations of `g` until it returns true or
/// `limit` orientations have been produced. Returns the number visited.
std::size_t enumerate_orientations(const ComparabilityGraph& g, std::size_t limit,
                                   const std::function<bool(const Orientation&)>& visit);

/// "1 | 0 | 3 | 2 | 4" rendering of an ordering.
std::string sorting_string(const std::vector<std::size_t>& order, const std::vector<std::string>& labels);

enum class RecoveryStage { ok, not_orientable, not_a_lattice };

const char* to_string(RecoveryStage s);

struct ComponentAnalysis {
  std::vector<std::size_t> live;
  std::vector<std::size_t> dumb;
  ComparabilityGraph graph;
};

/// Assignments x ≤ y (stacked over the component's live variables) with
/// f(x) ≰ f(y).
struct MonotoneViolation {
  std::size_t component = 0;
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::size_t lower_value = 0;
  std::size_t upper_value = 0;
};

struct RecoveryReport {
  std::size_t k = 0;
  /// Inputs of a control-form network; they lead each component's argument
  /// list (u_1..u_m, x_1..x_n).
  std::size_t m = 0;
  std::vector<std::string> labels;
  PairMode mode = PairMode::monotone;
  std::vector<ComponentAnalysis> components;
  ComparabilityGraph graph{0};
  RecoveryStage stage = RecoveryStage::ok;
  std::optional<Orientation> orientation;
  OrientMethod method = OrientMethod::refinement;
  std::vector<std::size_t> topological_order;
  /// Orientations examined; others are tried only when the first one yields
  /// no lattice or a lattice some component is not monotone under.
  std::size_t orientations_tried = 0;
  std::optional<FiniteLattice> lattice;
  /// The algorithm's verdict in monotone mode: a lattice order was found, so
  /// the network is claimed to be generated by ∨, ∧ and m_{a,b}. The pairwise
  /// tests are necessary but not sufficient, so check the two fields below.
  bool generated_by_basic_operators = false;
  /// Set when some component is not monotone under the recovered lattice;
  /// such a component cannot be written with ∨, ∧, m_{a,b} and constants.
  std::optional<MonotoneViolation> violation;
  /// Every component is monotone over the recovered lattice and its canonical
  /// form recompiles to the component.
  bool canonical_forms_verified = false;
  std::string message;
};

/// Algorithm: split components, drop dumb variables, build and conjoin
/// comparability graphs, orient, and test the order for being a lattice.
/// Control-form networks are handled by treating inputs as extra variables.
RecoveryReport recover_lattice(const ASSR& assr, PairMode mode = PairMode::monotone,
                               std::vector<std::string> labels = {});

class NotMonotone : public Error {
 public:
  NotMonotone(const std::string& what, std::vector<std::size_t> witness)
      : Error(ErrorKind::not_monotone, what, std::move(witness)) {}
};

/// Returns a pair of assignments x ≤ y (stacked, 0-based) with f(x) ≰ f(y).
std::optional<std::pair<std::size_t, std::size_t>> monotonicity_violation(const LogicalMatrix& f,
                                                                          const FiniteLattice& lattice);

/// f(x) = ⋁_{a ∈ L^N} ⋀_i m_{a_i, f(a)}(x_i) over variables x_1..x_N.
/// Throws NotMonotone.
LatticeExpr canonical_form(const LogicalMatrix& f, const FiniteLattice& lattice);

}  // namespace latnet
