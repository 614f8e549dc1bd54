#pragma once

// Shared fixtures and independent oracles for the test binaries. Oracles here
// deliberately avoid the library's fast paths: they work on explicit dense
// matrices, truth tables and graph searches.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "latnet/analysis.hpp"
#include "latnet/lattice.hpp"
#include "latnet/network.hpp"
#include "latnet/recovery.hpp"
#include "latnet/stp.hpp"

namespace fixture {

using latnet::FiniteLattice;
using latnet::LatticeExpr;
using latnet::LogicalMatrix;
using Idx = std::vector<std::size_t>;

inline const Idx join_diamond = {1, 1, 1, 1, 1, 2, 1, 2, 1, 1, 3, 3, 1, 2, 3, 4};
inline const Idx meet_diamond = {1, 2, 3, 4, 2, 2, 4, 4, 3, 4, 3, 4, 4, 4, 4, 4};

inline const Idx ex1_M1 = {1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 1, 2, 1, 2, 2, 2,
                           2, 2, 3, 4, 3, 4, 4, 4, 4, 4, 1, 1, 3, 3, 2, 2, 4, 4, 3, 3, 3, 3,
                           4, 4, 4, 4, 1, 2, 3, 4, 2, 2, 4, 4, 3, 4, 3, 4, 4, 4, 4, 4};
inline const Idx ex1_M2 = {1, 1, 1, 1, 1, 2, 1, 2, 1, 1, 3, 3, 1, 2, 3, 4, 1, 1, 1, 1, 2, 2,
                           2, 2, 1, 1, 3, 3, 2, 2, 4, 4, 1, 1, 1, 1, 1, 2, 1, 2, 3, 3, 3, 3,
                           3, 4, 3, 4, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4};
inline const Idx ex1_M = {1,  1,  1,  1,  5,  6,  5,  6,  9,  9,  11, 11, 13, 14, 15, 16, 1,  5,  1,  5,  6,  6,
                          6,  6,  9,  13, 11, 15, 14, 14, 16, 16, 1,  1,  9,  9,  5,  6,  13, 14, 11, 11, 11, 11,
                          15, 16, 15, 16, 1,  5,  9,  13, 6,  6,  14, 14, 11, 15, 11, 15, 16, 16, 16, 16};

inline const std::vector<std::string> ex2_C = {
    "1111000000000000", "0000000000000000", "0000000000000000", "0000000000000000",
    "0101101000000000", "0101111100000000", "0000000000000000", "0000000000000000",
    "0011000011000000", "0000000000000000", "0011000011110000", "0000000000000000",
    "0001001001001000", "0001001101001100", "0001001001011010", "0001001101011111",
};

inline const Idx ex3_M_S = {1, 1, 1, 4, 5, 5, 7, 8, 9};
inline const Idx ex3_P_S = {1, 1, 1, 2, 5, 5, 3, 6, 9, 1, 2, 2, 5, 5, 5, 6, 6, 9, 1, 2, 3, 5, 5, 6, 9, 9, 9};

inline const Idx ex4_L1 = {1, 2, 2, 2, 1, 2, 4, 4};
inline const Idx ex4_E1 = {1, 2, 1, 2};
inline const Idx ex4_L2 = {1, 2, 3, 2, 2, 3, 3, 3, 3, 1, 2, 3, 5, 5, 6, 6, 6, 6, 1, 2, 3, 5, 5, 6, 9, 9, 9};
inline const Idx ex4_E2 = {1, 2, 3, 1, 2, 3, 1, 2, 3};
inline const std::vector<int> ex4_CW1 = {0, 1, 1, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0};
inline const Idx ex4_W1 = {2, 4, 5, 7, 10, 12, 13, 15};
inline const std::vector<std::pair<std::size_t, std::size_t>> ex4_S1 = {{1, 2}, {1, 3}, {1, 4}};
inline const std::vector<int> ex4_CW2 = {0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 0, 0, 1, 1, 1, 1, 1, 1, 0,
                                         1, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 1, 1, 1, 1, 0, 1, 0, 0, 1,
                                         1, 1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 1, 1, 0, 0, 0, 0,
                                         1, 1, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 1, 1, 0, 0, 0, 0};
inline const std::vector<std::pair<std::size_t, std::size_t>> ex4_S2 = {
    {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {1, 7}, {1, 8}, {1, 9}, {2, 3}, {2, 6}, {2, 7}, {2, 8},
    {2, 9}, {3, 4}, {3, 5}, {4, 6}, {4, 7}, {4, 8}, {4, 9}, {5, 6}, {5, 7}, {5, 8}, {5, 9}};

inline const Idx ex5_M = {
    1,   31,  61,  91,  121, 26,  31,  61,  91,  121, 51,  56,  61,  91,  121, 76,  81,  86,  91,  121, 101,
    106, 111, 116, 121, 1,   32,  61,  92,  122, 32,  32,  67,  92,  117, 51,  57,  61,  92,  122, 82,  82,
    92,  92,  117, 102, 107, 112, 117, 122, 1,   31,  63,  93,  123, 26,  31,  63,  93,  123, 63,  68,  63,
    93,  118, 88,  93,  88,  93,  118, 103, 108, 113, 118, 123, 1,   32,  63,  94,  124, 32,  32,  69,  94,
    119, 63,  69,  63,  94,  119, 94,  94,  94,  94,  119, 124, 119, 119, 119, 124, 1,   32,  63,  94,  125,
    27,  32,  64,  94,  125, 53,  59,  63,  94,  125, 99,  94,  94,  94,  125, 125, 120, 120, 120, 125};
inline const std::vector<std::string> ex5_labels = {"1", "2", "3", "4", "0"};

inline LogicalMatrix delta(std::size_t rows, const Idx& cols) { return LogicalMatrix::delta(rows, cols); }

/// Fig 1 diamond: P1 top, P4 bottom, P2 and P3 incomparable.
inline FiniteLattice diamond() {
  return latnet::lattice_from_join(delta(4, join_diamond), {"P1", "P2", "P3", "P4"});
}

inline LatticeExpr x(std::size_t i) { return LatticeExpr::var(i - 1); }
inline LatticeExpr u(std::size_t s = 1) { return LatticeExpr::input(s - 1); }
inline LatticeExpr operator|(LatticeExpr a, LatticeExpr b) { return LatticeExpr::join(std::move(a), std::move(b)); }
inline LatticeExpr operator&(LatticeExpr a, LatticeExpr b) { return LatticeExpr::meet(std::move(a), std::move(b)); }

/// The network whose components are the printed M_1 and M_2.
inline latnet::NetworkDef example1() {
  return {diamond(), 2, 1, {x(1) & (x(2) | u()), x(1) | (x(2) & u())}, {}};
}

/// Autonomous network whose restriction to {P1, P2, P4} is the printed M|_S.
inline latnet::NetworkDef example3_autonomous() { return {diamond(), 2, 0, {x(1), x(1) | x(2)}, {}}; }

/// Control network whose restriction is the printed P|_S.
inline latnet::NetworkDef example3_control() {
  return {diamond(), 2, 1, {x(1) | (x(2) & u()), x(1) & (x(2) | u())}, {}};
}

/// Three-element chain with δ^1 on top (labels 1 > 2 > 0).
inline FiniteLattice d3_descending() {
  latnet::Relation r(9, false);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) r[a * 3 + b] = b <= a;
  return latnet::lattice_from_order(r, {"1", "2", "0"});
}

inline latnet::NetworkDef example4() {
  const auto l = latnet::product(latnet::chain(2), d3_descending());
  return {l, 2, 1, {x(1) | u(), x(1) & x(2)}, {x(2)}};
}

inline latnet::ASSR example5() { return latnet::assr_from_matrix(delta(125, ex5_M), 5, 3); }

inline std::size_t label_index(const std::vector<std::string>& labels, const std::string& l) {
  return static_cast<std::size_t>(std::find(labels.begin(), labels.end(), l) - labels.begin());
}

// ---------------------------------------------------------------- oracles

using Dense = std::vector<std::vector<long long>>;

inline Dense dense(const LogicalMatrix& m) {
  Dense d(m.rows(), std::vector<long long>(m.cols(), 0));
  for (std::size_t c = 0; c < m.cols(); ++c) d[m[c]][c] = 1;
  return d;
}

inline Dense dense(const latnet::IntMatrix& m) {
  Dense d(m.rows(), std::vector<long long>(m.cols(), 0));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) d[r][c] = m(r, c);
  return d;
}

inline Dense dense_identity(std::size_t n) {
  Dense d(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 1;
  return d;
}

inline Dense dense_kron(const Dense& a, const Dense& b) {
  const std::size_t ar = a.size(), ac = a.empty() ? 0 : a[0].size();
  const std::size_t br = b.size(), bc = b.empty() ? 0 : b[0].size();
  Dense d(ar * br, std::vector<long long>(ac * bc, 0));
  for (std::size_t i = 0; i < ar; ++i)
    for (std::size_t j = 0; j < ac; ++j)
      for (std::size_t p = 0; p < br; ++p)
        for (std::size_t q = 0; q < bc; ++q) d[i * br + p][j * bc + q] = a[i][j] * b[p][q];
  return d;
}

inline Dense dense_mul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size(), m = b.size(), p = b.empty() ? 0 : b[0].size();
  Dense d(n, std::vector<long long>(p, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < m; ++l)
      if (a[i][l])
        for (std::size_t j = 0; j < p; ++j) d[i][j] += a[i][l] * b[l][j];
  return d;
}

/// Textbook semi-tensor product.
inline Dense dense_stp(const Dense& a, const Dense& b) {
  const std::size_t n = a[0].size(), p = b.size();
  const std::size_t t = std::lcm(n, p);
  return dense_mul(dense_kron(a, dense_identity(t / n)), dense_kron(b, dense_identity(t / p)));
}

/// Evaluates an expression on explicit values, straight from the lattice
/// tables: vars are x[0..n), inputs are us[0..m).
inline std::size_t evaluate(const LatticeExpr& e, const FiniteLattice& l, const Idx& xs, const Idx& us) {
  using K = LatticeExpr::Kind;
  switch (e.kind()) {
    case K::var: return xs.at(e.index());
    case K::input: return us.at(e.index());
    case K::constant: return e.index();
    case K::join: return l.join(evaluate(e.left(), l, xs, us), evaluate(e.right(), l, xs, us));
    case K::meet: return l.meet(evaluate(e.left(), l, xs, us), evaluate(e.right(), l, xs, us));
    case K::mab: return l.leq(e.index(), evaluate(e.child(), l, xs, us)) ? e.value() : l.bottom();
  }
  return 0;
}

/// Truth table of `e` in the column order u_1..u_m x_1..x_n (first variable
/// most significant).
inline std::vector<std::size_t> truth_table(const LatticeExpr& e, const FiniteLattice& l, std::size_t n,
                                            std::size_t m) {
  const std::size_t k = l.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n + m; ++i) total *= k;
  std::vector<std::size_t> out(total);
  for (std::size_t c = 0; c < total; ++c) {
    Idx digits(n + m);
    std::size_t rest = c;
    for (std::size_t i = n + m; i-- > 0;) {
      digits[i] = rest % k;
      rest /= k;
    }
    out[c] = evaluate(e, l, Idx(digits.begin() + m, digits.end()), Idx(digits.begin(), digits.begin() + m));
  }
  return out;
}

/// Breadth-first search from every state over the input-labelled transition
/// graph; reach[i][j] is true when i is reachable from j in ≥ 1 steps.
inline std::vector<std::vector<bool>> bfs_reach(const latnet::ASSR& a) {
  const std::size_t n = a.num_states(), K = a.num_inputs();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> q;
    for (std::size_t u = 0; u < K; ++u) {
      const auto t = a.step(u, s);
      if (!seen[t]) seen[t] = true, q.push_back(t);
    }
    while (!q.empty()) {
      const auto v = q.front();
      q.pop_front();
      for (std::size_t u = 0; u < K; ++u) {
        const auto t = a.step(u, v);
        if (!seen[t]) seen[t] = true, q.push_back(t);
      }
    }
    for (std::size_t t = 0; t < n; ++t) reach[t][s] = seen[t];
  }
  return reach;
}

/// Pair (i, j) reaches a pair with different outputs in ≥ 1 steps under a
/// common input sequence (search on the product graph, no matrices). P is
/// N × K·N, column u*N + x.
inline bool bfs_distinguishable(const LogicalMatrix& P, std::size_t K, const LogicalMatrix& E, std::size_t i,
                                std::size_t j, bool count_now) {
  if (count_now && E[i] != E[j]) return true;
  const std::size_t n = P.rows();
  std::vector<bool> seen(n * n, false);
  std::deque<std::pair<std::size_t, std::size_t>> q{{i, j}};
  while (!q.empty()) {
    auto [p, r] = q.front();
    q.pop_front();
    for (std::size_t uu = 0; uu < K; ++uu) {
      const std::size_t p2 = P[uu * n + p], r2 = P[uu * n + r];
      if (E[p2] != E[r2]) return true;
      if (!seen[p2 * n + r2]) seen[p2 * n + r2] = true, q.emplace_back(p2, r2);
    }
  }
  return false;
}

// ---------------------------------------------------------------- random data

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240917);
  return g;
}

inline std::size_t uniform(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng());
}

inline LogicalMatrix random_logical(std::size_t rows, std::size_t cols) {
  std::vector<std::uint32_t> images(cols);
  for (auto& v : images) v = static_cast<std::uint32_t>(uniform(0, rows - 1));
  return LogicalMatrix(rows, std::move(images));
}

/// Every lattice on up to five elements up to isomorphism, plus relabelled
/// copies so that the bottom is not always the last index.
inline std::vector<FiniteLattice> lattice_corpus() {
  using latnet::lattice_from_covers;
  std::vector<FiniteLattice> out;
  out.push_back(latnet::chain(1));
  out.push_back(latnet::chain(2));
  out.push_back(latnet::chain(3));
  out.push_back(latnet::chain(4));
  out.push_back(latnet::chain(5));
  out.push_back(diamond());
  // 5 elements: M3, N5, pentagon variants and chains with a diamond.
  out.push_back(lattice_from_covers(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}));
  out.push_back(lattice_from_covers(5, {{0, 1}, {1, 2}, {0, 3}, {2, 4}, {3, 4}}));
  out.push_back(lattice_from_covers(5, {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}}));
  out.push_back(lattice_from_covers(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}}));
  out.push_back(lattice_from_covers(5, {{4, 2}, {4, 0}, {2, 1}, {0, 3}, {1, 3}}));
  out.push_back(latnet::product(latnet::chain(2), latnet::chain(2)));
  out.push_back(d3_descending());
  return out;
}

/// Random expression tree of the given depth budget.
inline LatticeExpr random_expr(const FiniteLattice& l, std::size_t n, std::size_t m, std::size_t depth,
                               bool allow_mab = true, bool allow_const = true) {
  const std::size_t k = l.size();
  const std::size_t leaf_kinds = 1 + (m > 0) + allow_const;
  if (depth == 0 || uniform(0, 3) == 0) {
    std::size_t pick = uniform(0, leaf_kinds - 1);
    if (pick == 0) return LatticeExpr::var(uniform(0, n - 1));
    if (m > 0 && pick == 1) return LatticeExpr::input(uniform(0, m - 1));
    return LatticeExpr::constant(uniform(0, k - 1));
  }
  const std::size_t op = uniform(0, allow_mab ? 2 : 1);
  if (op == 2) return LatticeExpr::mab(uniform(0, k - 1), uniform(0, k - 1), random_expr(l, n, m, depth - 1, true, allow_const));
  auto a = random_expr(l, n, m, depth - 1, allow_mab, allow_const);
  auto b = random_expr(l, n, m, depth - 1, allow_mab, allow_const);
  return op == 0 ? LatticeExpr::join(a, b) : LatticeExpr::meet(a, b);
}

/// Product of two factor systems over chain(2) with n = 1: element (a, b)
/// is a*2 + b, inputs likewise.
inline latnet::ASSR product_of(const LogicalMatrix& f1, const LogicalMatrix& f2, std::size_t m) {
  const std::size_t K = m ? 4 : 1;
  std::vector<std::uint32_t> images(4 * K);
  for (std::size_t uu = 0; uu < K; ++uu)
    for (std::size_t xx = 0; xx < 4; ++xx) {
      const std::size_t u1 = m ? uu / 2 : 0, u2 = m ? uu % 2 : 0;
      images[uu * 4 + xx] = static_cast<std::uint32_t>(f1[u1 * 2 + xx / 2] * 2 + f2[u2 * 2 + xx % 2]);
    }
  return latnet::assr_from_matrix(LogicalMatrix(4, std::move(images)), 4, 1, m);
}

namespace recovery {

using Edges = std::set<std::pair<std::string, std::string>>;

inline Edges labelled(const latnet::ComparabilityGraph& g, const std::vector<std::string>& labels) {
  Edges out;
  for (auto [a, b] : g.edges()) out.insert(std::minmax(labels[a], labels[b]));
  return out;
}

inline Edges edge_set(std::initializer_list<std::pair<const char*, const char*>> es) {
  Edges out;
  for (auto [a, b] : es) out.insert(std::minmax(std::string(a), std::string(b)));
  return out;
}

inline const Edges fig4a = edge_set({{"1", "2"}, {"1", "3"}, {"1", "4"}, {"1", "0"}, {"2", "3"},
                              {"2", "4"}, {"2", "0"}, {"3", "4"}, {"3", "0"}, {"4", "0"}});
inline const Edges fig4b = edge_set({{"1", "2"}, {"1", "3"}, {"1", "0"}, {"1", "4"}, {"2", "4"}, {"3", "4"}, {"0", "4"}});
inline const Edges fig4c =
    edge_set({{"1", "2"}, {"1", "3"}, {"1", "4"}, {"1", "0"}, {"2", "4"}, {"2", "0"}, {"3", "4"}, {"3", "0"}, {"4", "0"}});

inline latnet::ComparabilityGraph graph_of(std::size_t k, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  latnet::ComparabilityGraph g(k);
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

/// Counts transitive orientations by trying all 2^|E| direction choices.
inline std::size_t brute_force_orientations(const latnet::ComparabilityGraph& g) {
  const auto edges = g.edges();
  const std::size_t k = g.size();
  std::size_t count = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << edges.size()); ++mask) {
    std::vector<bool> arc(k * k, false);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto [a, b] = edges[e];
      if ((mask >> e) & 1u) std::swap(a, b);
      arc[a * k + b] = true;
    }
    bool ok = true;
    for (std::size_t a = 0; a < k && ok; ++a)
      for (std::size_t b = 0; b < k && ok; ++b)
        for (std::size_t c = 0; c < k && ok; ++c)
          if (arc[a * k + b] && arc[b * k + c] && !arc[a * k + c]) ok = false;
    count += ok;
  }
  return count;
}

/// f(x) = join of the values planted at points below x: monotone by
/// construction.
inline LogicalMatrix random_monotone(const FiniteLattice& l, std::size_t n) {
  const std::size_t k = l.size(), cols = latnet::checked_pow(k, n);
  std::vector<std::pair<std::size_t, std::size_t>> planted;
  const std::size_t count = uniform(1, 4);
  for (std::size_t i = 0; i < count; ++i) planted.emplace_back(uniform(0, cols - 1), uniform(0, k - 1));
  std::vector<std::uint32_t> images(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    const auto xs = latnet::unstack_index(c, k, n);
    std::size_t v = l.bottom();
    for (auto [p, val] : planted) {
      const auto ps = latnet::unstack_index(p, k, n);
      bool below = true;
      for (std::size_t i = 0; i < n; ++i) below = below && l.leq(ps[i], xs[i]);
      if (below) v = l.join(v, val);
    }
    images[c] = static_cast<std::uint32_t>(v);
  }
  return LogicalMatrix(k, std::move(images));
}

inline bool brute_monotone(const LogicalMatrix& f, const FiniteLattice& l, std::size_t n) {
  const std::size_t k = l.size();
  for (std::size_t a = 0; a < f.cols(); ++a)
    for (std::size_t b = 0; b < f.cols(); ++b) {
      const auto xa = latnet::unstack_index(a, k, n), xb = latnet::unstack_index(b, k, n);
      bool le = true;
      for (std::size_t i = 0; i < n; ++i) le = le && l.leq(xa[i], xb[i]);
      if (le && !l.leq(f[a], f[b])) return false;
    }
  return true;
}

/// Order isomorphism check by brute force over permutations.
inline bool order_isomorphic(const FiniteLattice& a, const FiniteLattice& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> p(a.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i)
      for (std::size_t j = 0; j < a.size() && ok; ++j) ok = a.leq(i, j) == b.leq(p[i], p[j]);
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}


}  // namespace recovery

}  // namespace fixture
