#include "latnet/analysis.hpp"

#include <algorithm>

namespace latnet {

BoolMatrix::BoolMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), rows_(n * ((n + 63) / 64), 0) {}

bool BoolMatrix::all() const {
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c)
      if (!get(r, c)) return false;
  return true;
}

std::string BoolMatrix::row_string(std::size_t r) const {
  std::string s(n_, '0');
  for (std::size_t c = 0; c < n_; ++c)
    if (get(r, c)) s[c] = '1';
  return s;
}

BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.n_ != b.n_) throw DimensionError("BoolMatrix product: sizes differ");
  BoolMatrix out(a.n_);
  for (std::size_t r = 0; r < a.n_; ++r)
    for (std::size_t l = 0; l < a.n_; ++l)
      if (a.get(r, l))
        for (std::size_t w = 0; w < a.words_; ++w) out.rows_[r * a.words_ + w] |= b.rows_[l * a.words_ + w];
  return out;
}

BoolMatrix& BoolMatrix::operator|=(const BoolMatrix& other) {
  if (n_ != other.n_) throw DimensionError("BoolMatrix union: sizes differ");
  for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i] |= other.rows_[i];
  return *this;
}

namespace {

std::size_t states_of(const LogicalMatrix& p, std::size_t num_inputs) {
  if (num_inputs == 0 || p.cols() != p.rows() * num_inputs)
    throw DimensionError("transition matrix must be N x K*N (got " + std::to_string(p.rows()) + "x" +
                         std::to_string(p.cols()) + ", K = " + std::to_string(num_inputs) + ")");
  return p.rows();
}

}  // namespace

BoolMatrix transition_matrix(const LogicalMatrix& p, std::size_t num_inputs) {
  const std::size_t n = states_of(p, num_inputs);
  BoolMatrix t(n);
  for (std::size_t u = 0; u < num_inputs; ++u) {
    const auto block = p.block(u * n, n);  // P ⋉ δ_K^{u+1}
    for (std::size_t c = 0; c < n; ++c) t.set(block[c], c);
  }
  return t;
}

// C_j = T + T^2 + ... + T^j satisfies C_{j+1} = T + T C_j, so the sum is
// complete once the recurrence stops changing (at the latest after N terms).
BoolMatrix reachability_matrix(const LogicalMatrix& p, std::size_t num_inputs) {
  const auto t = transition_matrix(p, num_inputs);
  const std::size_t n = t.size();
  BoolMatrix c = t;
  for (std::size_t j = 1; j < n; ++j) {
    BoolMatrix next = t * c;
    next |= t;
    if (next == c) break;
    c = std::move(next);
  }
  return c;
}

BoolMatrix controllability_matrix(const ASSR& assr) { return reachability_matrix(assr.M, assr.num_inputs()); }

bool is_controllable(const ASSR& assr) { return controllability_matrix(assr).all(); }

LogicalMatrix pair_system(const LogicalMatrix& p, std::size_t num_inputs) {
  const std::size_t n = states_of(p, num_inputs);
  const std::size_t k = num_inputs;
  return stp_chain({p, kron(LogicalMatrix::identity(k * n), p), kron(LogicalMatrix::identity(k), swap_matrix(k, n)),
                    power_reduce_matrix(k)});
}

const char* to_string(DistinguishMode mode) { return mode == DistinguishMode::paper ? "paper" : "standard"; }

bool Distinguishability::distinguishable(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(i, j));
}

Distinguishability distinguishable_pairs(const LogicalMatrix& g, std::size_t num_inputs, const LogicalMatrix& e,
                                         DistinguishMode mode) {
  const std::size_t n = e.cols();
  if (g.rows() != n * n) throw DimensionError("pair system must have N^2 rows for an output map with N columns");
  const auto reach = reachability_matrix(g, num_inputs);

  Distinguishability d;
  d.num_states = n;
  std::vector<bool> in_w(n * n, false);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (e[i] != e[j]) {
        in_w[i * n + j] = true;
        d.output_distinguishing.push_back(i * n + j);
      }
  d.reach_indicator.assign(n * n, false);
  for (auto v : d.output_distinguishing)
    for (std::size_t w = 0; w < n * n; ++w)
      if (reach.get(v, w)) d.reach_indicator[w] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t w = i * n + j;
      if (d.reach_indicator[w] || (mode == DistinguishMode::standard && in_w[w])) d.pairs.emplace_back(i, j);
    }
  return d;
}

Distinguishability distinguishability(const ASSR& assr, DistinguishMode mode) {
  if (!assr.E) throw Error(ErrorKind::invalid_argument, "network has no outputs");
  const std::size_t k = assr.num_inputs();
  return distinguishable_pairs(pair_system(assr.M, k), k, *assr.E, mode);
}

ObservabilityVerdict is_observable(const ASSR& assr, DistinguishMode mode) {
  ObservabilityVerdict v;
  v.detail = distinguishability(assr, mode);
  const std::size_t n = v.detail.num_states;
  for (std::size_t i = 0; i < n && v.observable; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!v.detail.distinguishable(i, j)) {
        v.observable = false;
        v.witness = std::make_pair(i, j);
        break;
      }
  return v;
}

namespace {

// Projects an index over L^count (L = L1 × L2) onto one factor.
std::size_t project(std::size_t index, std::size_t count, std::size_t k1, std::size_t k2, bool first) {
  auto digits = unstack_index(index, k1 * k2, count);
  for (auto& d : digits) d = first ? d / k2 : d % k2;
  return stack_index(digits, first ? k1 : k2);
}

std::size_t lift(std::size_t factor_index, std::size_t other_index, std::size_t count, std::size_t k1, std::size_t k2,
                 bool first) {
  const auto own = unstack_index(factor_index, first ? k1 : k2, count);
  const auto other = unstack_index(other_index, first ? k2 : k1, count);
  std::vector<std::size_t> digits(count);
  for (std::size_t i = 0; i < count; ++i) digits[i] = first ? own[i] * k2 + other[i] : other[i] * k2 + own[i];
  return stack_index(digits, k1 * k2);
}

std::size_t log_base(std::size_t value, std::size_t base) {
  std::size_t p = 0, v = 1;
  while (v < value) {
    v *= base;
    ++p;
  }
  if (v != value) throw DimensionError("dimension is not a power of the lattice size");
  return p;
}

ASSR factor(const ASSR& assr, std::size_t k1, std::size_t k2, bool first) {
  const std::size_t kf = first ? k1 : k2, ko = first ? k2 : k1;
  const std::size_t n = assr.n, m = assr.m;
  const std::size_t states = checked_pow(kf, n), inputs = checked_pow(kf, m);
  const std::size_t lifts = checked_pow(ko, n + m);
  const std::size_t full_states = assr.num_states();

  std::vector<std::uint32_t> images(states * inputs);
  for (std::size_t u = 0; u < inputs; ++u)
    for (std::size_t x = 0; x < states; ++x) {
      const std::size_t point = u * states + x;  // stacked (u, x) over the factor
      std::optional<std::size_t> image;
      for (std::size_t o = 0; o < lifts; ++o) {
        const std::size_t full = lift(point, o, n + m, k1, k2, first);
        const std::size_t fu = full / full_states, fx = full % full_states;
        const std::size_t next = project(assr.step(fu, fx), n, k1, k2, first);
        if (image && *image != next)
          throw Error(ErrorKind::not_decomposable,
                      "factor dynamics depend on the other factor at input " + std::to_string(fu + 1) + ", state " +
                          std::to_string(fx + 1),
                      {fu, fx});
        image = next;
      }
      images[point] = static_cast<std::uint32_t>(*image);
    }
  LogicalMatrix M(states, std::move(images));

  std::optional<LogicalMatrix> E;
  if (assr.E) {
    const std::size_t p = log_base(assr.E->rows(), assr.k);
    const std::size_t other_states = checked_pow(ko, n);
    std::vector<std::uint32_t> ys(states);
    for (std::size_t x = 0; x < states; ++x) {
      std::optional<std::size_t> image;
      for (std::size_t o = 0; o < other_states; ++o) {
        const std::size_t full = lift(x, o, n, k1, k2, first);
        const std::size_t y = project((*assr.E)[full], p, k1, k2, first);
        if (image && *image != y)
          throw Error(ErrorKind::not_decomposable, "factor output depends on the other factor", {0, full});
        image = y;
      }
      ys[x] = static_cast<std::uint32_t>(*image);
    }
    E = LogicalMatrix(checked_pow(kf, p), std::move(ys));
  }
  auto components = split_components(M, kf, n);
  return ASSR{kf, n, m, std::move(M), std::move(components), std::move(E)};
}

}  // namespace

FactorSystems factor_network(const ASSR& assr, std::size_t k1, std::size_t k2) {
  if (k1 * k2 != assr.k) throw DimensionError("factor sizes do not multiply to the lattice size");
  return FactorSystems{factor(assr, k1, k2, true), factor(assr, k1, k2, false)};
}

bool product_verdict(const FactorSystems& factors, Property property, DistinguishMode mode) {
  if (property == Property::controllability) return is_controllable(factors.first) && is_controllable(factors.second);
  return is_observable(factors.first, mode).observable && is_observable(factors.second, mode).observable;
}

CombinationReport combination_report(const ASSR& product_system, const FactorSystems& factors, std::size_t k1,
                                     std::size_t k2, DistinguishMode mode) {
  const auto direct = distinguishability(product_system, mode);
  const auto d1 = distinguishability(factors.first, mode);
  const auto d2 = distinguishability(factors.second, mode);
  const std::size_t n = direct.num_states;
  CombinationReport r;
  r.direct_observable = true;
  r.conjunction_matches = true;
  r.disjunction_matches = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      ++r.product_pairs;
      const auto x1 = project(x, product_system.n, k1, k2, true), y1 = project(y, product_system.n, k1, k2, true);
      const auto x2 = project(x, product_system.n, k1, k2, false), y2 = project(y, product_system.n, k1, k2, false);
      const bool first = x1 != y1 && d1.distinguishable(x1, y1);
      const bool second = x2 != y2 && d2.distinguishable(x2, y2);
      const bool truth = direct.distinguishable(x, y);
      r.direct_distinguishable += truth;
      r.direct_observable = r.direct_observable && truth;
      r.conjunction_distinguishable += first && second;
      r.disjunction_distinguishable += first || second;
      if ((first && second) != truth) r.conjunction_matches = false;
      if ((first || second) != truth) r.disjunction_matches = false;
    }
  return r;
}

}  // namespace latnet
