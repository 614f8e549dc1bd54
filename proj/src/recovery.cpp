#include "latnet/recovery.hpp"

#include <algorithm>
#include <numeric>

namespace latnet {

namespace {

std::size_t arity_of(const LogicalMatrix& f, std::size_t k) {
  if (k == 0 || f.rows() != k) throw DimensionError("function matrix must have k rows");
  std::size_t n = 0, cols = 1;
  while (cols < f.cols()) {
    cols *= k;
    ++n;
  }
  if (cols != f.cols()) throw DimensionError("column count " + std::to_string(f.cols()) + " is not a power of " +
                                             std::to_string(k));
  return n;
}

}  // namespace

PairRestriction restrict_pair(const LogicalMatrix& m, std::size_t k, std::size_t a, std::size_t b) {
  const std::size_t n = arity_of(m, k);
  if (a >= k || b >= k) throw Error(ErrorKind::invalid_argument, "pair element out of range");
  if (a == b) throw Error(ErrorKind::invalid_argument, "pair restriction needs two distinct elements", {a, b});
  const auto select = LogicalMatrix::delta(k, {a + 1, b + 1});
  LogicalMatrix out = m;
  for (std::size_t j = 0; j < n; ++j) out = stp(out, kron(LogicalMatrix::identity(std::size_t{1} << j), select));
  return PairRestriction{a, b, n, std::move(out)};
}

// (M_ab W) ⋉ (1,-1)^T = (M_ab W)((1,-1)^T ⊗ I_{2^{N-1}}): column c is the
// difference of columns c and c + 2^{N-1} of M_ab W.
IntMatrix pair_diff(const PairRestriction& pr, std::size_t i) {
  if (i == 0 || i > pr.arity) throw Error(ErrorKind::invalid_argument, "variable index out of range");
  const auto rotated = stp(pr.matrix, swap_matrix(2, std::size_t{1} << (i - 1)));
  const std::size_t half = rotated.cols() / 2;
  IntMatrix out(rotated.rows(), half);
  for (std::size_t c = 0; c < half; ++c) {
    out(rotated[c], c) += 1;
    out(rotated[c + half], c) -= 1;
  }
  return out;
}

const char* to_string(PairCondition c) {
  switch (c) {
    case PairCondition::values_in_pair: return "values_in_pair";
    case PairCondition::monotone_steps: return "monotone_steps";
    case PairCondition::reproducing: return "reproducing";
  }
  return "?";
}

namespace {

PairTest fail(PairCondition c, std::size_t column, std::size_t variable = 0) {
  return PairTest{false, c, column, variable};
}

PairTest test_monotone(const PairRestriction& pr) {
  const auto& m = pr.matrix;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (m[c] != pr.a && m[c] != pr.b) return fail(PairCondition::values_in_pair, c);
  for (std::size_t i = 1; i <= pr.arity; ++i) {
    const auto d = pair_diff(pr, i);
    for (std::size_t c = 0; c < d.cols(); ++c) {
      bool zero = true, step = true;
      for (std::size_t r = 0; r < d.rows(); ++r) {
        const std::int64_t want = r == pr.a ? 1 : r == pr.b ? -1 : 0;
        zero = zero && d(r, c) == 0;
        step = step && d(r, c) == want;
      }
      if (!zero && !step) return fail(PairCondition::monotone_steps, c, i);
    }
  }
  return {};
}

}  // namespace

PairTest monotone_pair_test(const PairRestriction& pr) { return test_monotone(pr); }

PairTest comparable_pair_test(const PairRestriction& pr) {
  auto t = test_monotone(pr);
  if (!t.passed) return t;
  const auto& m = pr.matrix;
  if (m[0] != pr.a) return fail(PairCondition::reproducing, 0);
  if (m[m.cols() - 1] != pr.b) return fail(PairCondition::reproducing, m.cols() - 1);
  return t;
}

ComparabilityGraph ComparabilityGraph::complete(std::size_t k) {
  ComparabilityGraph g(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) g.add_edge(a, b);
  return g;
}

void ComparabilityGraph::add_edge(std::size_t a, std::size_t b) {
  if (a >= k_ || b >= k_) throw Error(ErrorKind::invalid_argument, "vertex out of range");
  if (a == b) throw Error(ErrorKind::invalid_argument, "comparability graphs have no self-loops", {a});
  adj_[a * k_ + b] = adj_[b * k_ + a] = true;
}

void ComparabilityGraph::remove_edge(std::size_t a, std::size_t b) {
  if (a >= k_ || b >= k_) throw Error(ErrorKind::invalid_argument, "vertex out of range");
  adj_[a * k_ + b] = adj_[b * k_ + a] = false;
}

std::vector<std::pair<std::size_t, std::size_t>> ComparabilityGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < k_; ++a)
    for (std::size_t b = a + 1; b < k_; ++b)
      if (adjacent(a, b)) out.emplace_back(a, b);
  return out;
}

ComparabilityGraph operator&(const ComparabilityGraph& x, const ComparabilityGraph& y) {
  if (x.size() != y.size()) throw DimensionError("graph conjunction: vertex counts differ");
  ComparabilityGraph out(x.size());
  for (auto [a, b] : x.edges())
    if (y.adjacent(a, b)) out.add_edge(a, b);
  return out;
}

// A function without live variables is constant and monotone for every order,
// so it does not constrain the graph.
ComparabilityGraph component_graph(const LogicalMatrix& component, std::size_t k, PairMode mode) {
  if (arity_of(component, k) == 0) return ComparabilityGraph::complete(k);
  ComparabilityGraph g(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      const auto pr = restrict_pair(component, k, a, b);
      const auto t = mode == PairMode::monotone ? monotone_pair_test(pr) : comparable_pair_test(pr);
      if (t.passed) g.add_edge(a, b);
    }
  return g;
}

GraphConjunction comparability_graph(const std::vector<LogicalMatrix>& components, std::size_t k, PairMode mode) {
  GraphConjunction out{{}, ComparabilityGraph::complete(k)};
  for (const auto& c : components) {
    out.per_component.push_back(component_graph(c, k, mode));
    out.conjunction = out.conjunction & out.per_component.back();
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Orientation::arcs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < k_; ++a)
    for (std::size_t b = 0; b < k_; ++b)
      if (arc(a, b)) out.emplace_back(a, b);
  return out;
}

Relation Orientation::as_order() const {
  Relation r(k_ * k_, false);
  for (std::size_t a = 0; a < k_; ++a) {
    r[a * k_ + a] = true;
    for (std::size_t b = 0; b < k_; ++b)
      if (arc(a, b)) r[a * k_ + b] = true;
  }
  return r;
}

std::vector<std::size_t> Orientation::topological_order() const {
  std::vector<std::size_t> indegree(k_, 0), out;
  for (auto [a, b] : arcs()) ++indegree[b];
  std::vector<bool> done(k_, false);
  while (out.size() < k_) {
    std::size_t next = k_;
    for (std::size_t v = 0; v < k_; ++v)
      if (!done[v] && indegree[v] == 0) {
        next = v;
        break;
      }
    if (next == k_) throw Error(ErrorKind::not_a_poset, "orientation has a cycle");
    done[next] = true;
    out.push_back(next);
    for (std::size_t v = 0; v < k_; ++v)
      if (arc(next, v)) --indegree[v];
  }
  return out;
}

std::optional<std::vector<std::size_t>> Orientation::transitivity_violation(const ComparabilityGraph& g) const {
  if (g.size() != k_) throw DimensionError("orientation and graph sizes differ");
  for (std::size_t a = 0; a < k_; ++a)
    for (std::size_t b = a + 1; b < k_; ++b) {
      const int count = int(arc(a, b)) + int(arc(b, a));
      if (count != (g.adjacent(a, b) ? 1 : 0)) return std::vector<std::size_t>{a, b};
    }
  for (std::size_t a = 0; a < k_; ++a)
    for (std::size_t b = 0; b < k_; ++b) {
      if (!arc(a, b)) continue;
      for (std::size_t c = 0; c < k_; ++c)
        if (arc(b, c) && !arc(a, c)) return std::vector<std::size_t>{a, b, c};
    }
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> refine_partition(const ComparabilityGraph& g, std::size_t source) {
  const std::size_t k = g.size();
  if (k == 0) return {};
  if (source >= k) throw Error(ErrorKind::invalid_argument, "source vertex out of range");
  std::vector<std::vector<std::size_t>> classes{{source}, {}};
  for (std::size_t v = 0; v < k; ++v)
    if (v != source) classes[1].push_back(v);
  if (classes[1].empty()) classes.pop_back();

  bool changed = true;
  while (changed && classes.size() < k) {
    changed = false;
    for (std::size_t x = 0; x < k; ++x) {
      std::size_t home = 0;
      while (std::find(classes[home].begin(), classes[home].end(), x) == classes[home].end()) ++home;
      std::vector<std::vector<std::size_t>> next;
      for (std::size_t j = 0; j < classes.size(); ++j) {
        std::vector<std::size_t> adjacent, apart;
        for (auto v : classes[j]) (v == x || g.adjacent(x, v) ? adjacent : apart).push_back(v);
        if (adjacent.empty() || apart.empty()) {
          next.push_back(classes[j]);
          continue;
        }
        changed = true;
        if (j == home || home < j) {
          next.push_back(std::move(apart));
          next.push_back(std::move(adjacent));
        } else {
          next.push_back(std::move(adjacent));
          next.push_back(std::move(apart));
        }
      }
      classes = std::move(next);
    }
  }
  return classes;
}

namespace {

enum : std::int8_t { unset = 0, forward = 1, backward = -1 };

// Orientation state per unordered edge, stored at [min*k + max]: forward
// means min → max.
struct ArcState {
  std::size_t k;
  std::vector<std::int8_t> dir;

  explicit ArcState(std::size_t k) : k(k), dir(k * k, unset) {}
  std::int8_t get(std::size_t a, std::size_t b) const {
    const auto d = dir[std::min(a, b) * k + std::max(a, b)];
    return a < b ? d : static_cast<std::int8_t>(-d);
  }
  void set(std::size_t a, std::size_t b) { dir[std::min(a, b) * k + std::max(a, b)] = a < b ? forward : backward; }
};

struct Conflict {
  std::vector<std::size_t> witness;
};

// Orients a → b and everything it Γ-forces inside `live` (the edges still
// present). Newly oriented edges are appended to `touched`. Returns a forcing
// triple on contradiction.
std::optional<Conflict> force(const ComparabilityGraph& live, ArcState& state, std::size_t a, std::size_t b,
                              std::vector<std::pair<std::size_t, std::size_t>>& touched) {
  const std::size_t k = live.size();
  struct Item {
    std::size_t from, to;
    std::vector<std::size_t> why;
  };
  std::vector<Item> stack{{a, b, {a, b}}};
  while (!stack.empty()) {
    auto [u, v, why] = std::move(stack.back());
    stack.pop_back();
    const auto current = state.get(u, v);
    if (current == forward) continue;
    if (current == backward) return Conflict{why};
    state.set(u, v);
    touched.emplace_back(u, v);
    for (std::size_t c = 0; c < k; ++c) {
      if (c == u || c == v) continue;
      if (live.adjacent(u, c) && !live.adjacent(v, c)) stack.push_back({u, c, {v, u, c}});
      if (live.adjacent(v, c) && !live.adjacent(u, c)) stack.push_back({c, v, {u, v, c}});
    }
  }
  return std::nullopt;
}

Orientation to_orientation(const ArcState& state, const ComparabilityGraph& g) {
  Orientation o(g.size());
  for (auto [a, b] : g.edges()) {
    if (state.get(a, b) == forward) o.set_arc(a, b);
    else o.set_arc(b, a);
  }
  return o;
}

}  // namespace

// Golumbic's decomposition: orient one implication class of the remaining
// graph at a time and delete it before picking the next edge.
OrientResult orient_by_implication(const ComparabilityGraph& g) {
  OrientResult r;
  r.method = OrientMethod::implication_classes;
  ComparabilityGraph live = g;
  ArcState final_state(g.size());
  for (;;) {
    const auto remaining = live.edges();
    if (remaining.empty()) break;
    ArcState state(g.size());
    std::vector<std::pair<std::size_t, std::size_t>> touched;
    if (auto conflict = force(live, state, remaining.front().first, remaining.front().second, touched)) {
      r.witness = conflict->witness;
      return r;
    }
    for (auto [u, v] : touched) {
      final_state.set(u, v);
      live.remove_edge(u, v);
    }
  }
  auto o = to_orientation(final_state, g);
  if (auto bad = o.transitivity_violation(g)) {
    r.witness = *bad;
    return r;
  }
  r.ok = true;
  r.orientation = std::move(o);
  return r;
}

OrientResult transitive_orient(const ComparabilityGraph& g) {
  const std::size_t k = g.size();
  auto classes = refine_partition(g);
  if (classes.size() == k) {
    std::vector<std::size_t> position(k);
    for (std::size_t i = 0; i < k; ++i) position[classes[i][0]] = i;
    Orientation o(k);
    for (auto [a, b] : g.edges()) {
      if (position[a] < position[b]) o.set_arc(a, b);
      else o.set_arc(b, a);
    }
    if (!o.transitivity_violation(g)) {
      OrientResult r;
      r.ok = true;
      r.orientation = std::move(o);
      r.refinement = std::move(classes);
      return r;
    }
  }
  auto r = orient_by_implication(g);
  r.refinement = std::move(classes);
  return r;
}

namespace {

struct Enumerator {
  const ComparabilityGraph& g;
  std::size_t limit;
  const std::function<bool(const Orientation&)>& visit;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t visited = 0;
  bool stop = false;

  void run(ArcState& state) {
    if (stop) return;
    auto open = std::find_if(edges.begin(), edges.end(), [&](auto e) { return state.get(e.first, e.second) == unset; });
    if (open == edges.end()) {
      auto o = to_orientation(state, g);
      if (o.transitivity_violation(g)) return;
      ++visited;
      if (visit(o) || visited >= limit) stop = true;
      return;
    }
    for (bool flip : {false, true}) {
      ArcState next = state;
      std::vector<std::pair<std::size_t, std::size_t>> touched;
      const auto [a, b] = flip ? std::make_pair(open->second, open->first) : *open;
      if (!force(g, next, a, b, touched)) run(next);
      if (stop) return;
    }
  }
};

}  // namespace

std::size_t enumerate_orientations(const ComparabilityGraph& g, std::size_t limit,
                                   const std::function<bool(const Orientation&)>& visit) {
  if (limit == 0) return 0;
  Enumerator e{g, limit, visit, g.edges()};
  ArcState state(g.size());
  e.run(state);
  return e.visited;
}

std::string sorting_string(const std::vector<std::size_t>& order, const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) out += " | ";
    out += labels.at(order[i]);
  }
  return out;
}

const char* to_string(PairMode m) { return m == PairMode::monotone ? "monotone" : "comparable"; }

const char* to_string(OrientMethod m) {
  return m == OrientMethod::refinement ? "refinement" : "implication_classes";
}

const char* to_string(RecoveryStage s) {
  switch (s) {
    case RecoveryStage::ok: return "ok";
    case RecoveryStage::not_orientable: return "not_orientable";
    case RecoveryStage::not_a_lattice: return "not_a_lattice";
  }
  return "?";
}

std::optional<std::pair<std::size_t, std::size_t>> monotonicity_violation(const LogicalMatrix& f,
                                                                          const FiniteLattice& lattice) {
  const std::size_t k = lattice.size();
  const std::size_t n = arity_of(f, k);
  for (std::size_t x = 0; x < f.cols(); ++x) {
    const auto digits = unstack_index(x, k, n);
    std::size_t weight = f.cols();
    for (std::size_t i = 0; i < n; ++i) {
      weight /= k;
      for (auto [lo, hi] : lattice.covers()) {
        if (lo != digits[i]) continue;
        const std::size_t y = x + (hi - lo) * weight;
        if (!lattice.leq(f[x], f[y])) return std::make_pair(x, y);
      }
    }
  }
  return std::nullopt;
}

LatticeExpr canonical_form(const LogicalMatrix& f, const FiniteLattice& lattice) {
  const std::size_t k = lattice.size();
  const std::size_t n = arity_of(f, k);
  if (auto bad = monotonicity_violation(f, lattice))
    throw NotMonotone("function is not monotone: assignment " + std::to_string(bad->first + 1) + " <= " +
                          std::to_string(bad->second + 1) + " but images are not ordered",
                      {bad->first, bad->second});
  if (n == 0) return LatticeExpr::constant(f[0]);
  std::optional<LatticeExpr> out;
  for (std::size_t a = 0; a < f.cols(); ++a) {
    const auto digits = unstack_index(a, k, n);
    std::optional<LatticeExpr> term;
    for (std::size_t i = 0; i < n; ++i) {
      auto factor = LatticeExpr::mab(digits[i], f[a], LatticeExpr::var(i));
      term = term ? LatticeExpr::meet(*term, factor) : factor;
    }
    out = out ? LatticeExpr::join(*out, *term) : *term;
  }
  return *out;
}

namespace {

constexpr std::size_t max_enumerated_vertices = 10;
constexpr std::size_t max_enumerated_orientations = 100000;
// Canonical forms have k^N terms of N factors each; recompiling them is
// quadratic in k^N, so the round trip is skipped above this size.
constexpr std::size_t max_round_trip_columns = 4096;

// First component that is not monotone under `lattice`, if any. Sets
// `round_trip` when every canonical form was recompiled and matched.
std::optional<MonotoneViolation> check_components(const RecoveryReport& report,
                                                  const std::vector<LogicalMatrix>& reduced,
                                                  const FiniteLattice& lattice, bool& round_trip) {
  round_trip = true;
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    const auto& f = reduced[i];
    if (auto bad = monotonicity_violation(f, lattice)) {
      round_trip = false;
      return MonotoneViolation{i, bad->first, bad->second, f[bad->first], f[bad->second]};
    }
    if (f.cols() > max_round_trip_columns) {
      round_trip = false;
      continue;
    }
    const std::size_t n = arity_of(f, report.k);
    if (compile_expr(canonical_form(f, lattice), lattice, n, 0) != f) round_trip = false;
  }
  return std::nullopt;
}

}  // namespace

RecoveryReport recover_lattice(const ASSR& assr, PairMode mode, std::vector<std::string> labels) {
  RecoveryReport report;
  report.k = assr.k;
  report.m = assr.m;
  report.mode = mode;
  report.labels = labels.empty() ? default_labels(assr.k) : std::move(labels);
  if (report.labels.size() != assr.k) throw Error(ErrorKind::invalid_argument, "label count differs from k");

  const auto components = assr.components.empty() ? split_components(assr.M, assr.k, assr.n) : assr.components;
  std::vector<LogicalMatrix> reduced;
  for (const auto& c : components) {
    auto r = remove_dumb(c, assr.k);
    reduced.push_back(r.matrix);
    report.components.push_back({std::move(r.live), std::move(r.dumb), ComparabilityGraph(assr.k)});
  }

  auto graphs = comparability_graph(reduced, assr.k, mode);
  for (std::size_t i = 0; i < reduced.size(); ++i) report.components[i].graph = graphs.per_component[i];
  report.graph = graphs.conjunction;

  auto oriented = transitive_orient(report.graph);
  if (!oriented.ok) {
    report.stage = RecoveryStage::not_orientable;
    std::string w;
    for (auto v : oriented.witness) w += (w.empty() ? "" : ", ") + report.labels[v];
    report.message = "comparability graph has no transitive orientation (forcing witness " + w + ")";
    return report;
  }

  struct Candidate {
    Orientation orientation;
    FiniteLattice lattice;
    std::optional<MonotoneViolation> violation;
    bool round_trip;
  };
  std::optional<Candidate> chosen;
  std::size_t tried = 0;
  auto consider = [&](const Orientation& o) {
    ++tried;
    try {
      auto l = lattice_from_order(o.as_order(), report.labels);
      bool round_trip = false;
      auto violation = check_components(report, reduced, l, round_trip);
      const bool monotone = !violation;
      if (!chosen || (monotone && chosen->violation))
        chosen = Candidate{o, std::move(l), std::move(violation), round_trip};
      return monotone;
    } catch (const LatticeError&) {
      return false;
    }
  };

  const bool first_ok = consider(*oriented.orientation);
  if (!first_ok && assr.k <= max_enumerated_vertices)
    enumerate_orientations(report.graph, max_enumerated_orientations,
                           [&](const Orientation& o) { return !(o.arcs() == oriented.orientation->arcs()) && consider(o); });
  report.orientations_tried = tried;

  const bool refinement_used =
      chosen && oriented.method == OrientMethod::refinement && chosen->orientation.arcs() == oriented.orientation->arcs();
  report.orientation = chosen ? chosen->orientation : *oriented.orientation;
  report.method = refinement_used || !chosen ? oriented.method : OrientMethod::implication_classes;
  if (refinement_used) {
    for (const auto& c : oriented.refinement) report.topological_order.push_back(c[0]);
  } else {
    report.topological_order = report.orientation->topological_order();
  }

  if (!chosen) {
    report.stage = RecoveryStage::not_a_lattice;
    report.message = "no transitive orientation of the comparability graph is a lattice order";
    return report;
  }
  report.stage = RecoveryStage::ok;
  report.lattice = chosen->lattice;
  report.generated_by_basic_operators = mode == PairMode::monotone;
  report.violation = chosen->violation;
  report.canonical_forms_verified = !chosen->violation && chosen->round_trip;
  if (chosen->violation)
    report.message = "lattice order found, but component " + std::to_string(chosen->violation->component + 1) +
                     " is not monotone under it";
  else if (!chosen->round_trip)
    report.message = "components are monotone; canonical-form round trip skipped for large components";
  return report;
}

}  // namespace latnet
