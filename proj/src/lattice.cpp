#include "latnet/lattice.hpp"

#include <algorithm>
#include <set>

namespace latnet {

const char* to_string(JoinAxiom axiom) {
  switch (axiom) {
    case JoinAxiom::idempotent: return "idempotent";
    case JoinAxiom::commutative: return "commutative";
    case JoinAxiom::associative: return "associative";
    case JoinAxiom::identity: return "identity";
  }
  return "?";
}

namespace {

std::size_t join_arity(const LogicalMatrix& m) {
  const std::size_t k = m.rows();
  if (m.cols() != k * k)
    throw DimensionError("join structure matrix must be k x k^2, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  return k;
}

std::optional<std::size_t> first_mismatch(const LogicalMatrix& a, const LogicalMatrix& b) {
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (a[c] != b[c]) return c;
  return std::nullopt;
}

std::string join_name(const std::vector<std::size_t>& xs) {
  std::string s;
  for (auto x : xs) s += (s.empty() ? "" : ",") + std::to_string(x + 1);
  return s;
}

}  // namespace

JoinVerdict verify_join_structure(const LogicalMatrix& m) {
  const std::size_t k = join_arity(m);
  JoinVerdict v;
  auto fail = [&](JoinAxiom axiom, std::vector<std::size_t> witness, std::string msg) {
    v.ok = false;
    v.failed = axiom;
    v.witness = std::move(witness);
    v.message = std::move(msg);
    return v;
  };

  const auto idem = stp(m, power_reduce_matrix(k));
  if (auto c = first_mismatch(idem, LogicalMatrix::identity(k)))
    return fail(JoinAxiom::idempotent, {*c}, "x v x != x for x = δ^" + std::to_string(*c + 1));

  const auto swapped = stp(m, swap_matrix(k, k));
  if (auto c = first_mismatch(swapped, m)) {
    std::vector<std::size_t> w{*c / k, *c % k};
    return fail(JoinAxiom::commutative, w, "x v y != y v x for (x,y) = (" + join_name(w) + ")");
  }

  const auto left = stp(m, m);
  const auto right = stp(m, kron(LogicalMatrix::identity(k), m));
  if (auto c = first_mismatch(left, right)) {
    auto w = unstack_index(*c, k, 3);
    return fail(JoinAxiom::associative, w, "(x v y) v z != x v (y v z) for (x,y,z) = (" + join_name(w) + ")");
  }

  for (std::size_t i = 0; i < k; ++i)
    if (m.block(i * k, k).is_identity()) return v;
  return fail(JoinAxiom::identity, {}, "no block of M equals I_k (no identity element)");
}

FiniteLattice::FiniteLattice(std::vector<std::string> labels, LogicalMatrix join, LogicalMatrix meet, Relation leq)
    : k_(labels.size()), labels_(std::move(labels)), join_(std::move(join)), meet_(std::move(meet)), leq_(std::move(leq)) {
  for (std::size_t a = 0; a < k_; ++a) {
    bool is_bottom = true, is_top = true;
    for (std::size_t b = 0; b < k_; ++b) {
      is_bottom = is_bottom && this->leq(a, b);
      is_top = is_top && this->leq(b, a);
    }
    if (is_bottom) bottom_ = a;
    if (is_top) top_ = a;
  }
  for (std::size_t a = 0; a < k_; ++a)
    for (std::size_t b = 0; b < k_; ++b) {
      if (a == b || !this->leq(a, b)) continue;
      bool cover = true;
      for (std::size_t c = 0; c < k_ && cover; ++c)
        if (c != a && c != b && this->leq(a, c) && this->leq(c, b)) cover = false;
      if (cover) covers_.emplace_back(a, b);
    }
  std::sort(covers_.begin(), covers_.end());

  // Longest path from bottom along covers; elements visited in order of the
  // number of elements below them, which is a linear extension.
  std::vector<std::size_t> by_rank(k_);
  std::vector<std::size_t> below(k_, 0);
  for (std::size_t a = 0; a < k_; ++a)
    for (std::size_t b = 0; b < k_; ++b) below[a] += this->leq(b, a);
  for (std::size_t i = 0; i < k_; ++i) by_rank[i] = i;
  std::stable_sort(by_rank.begin(), by_rank.end(), [&](auto x, auto y) { return below[x] < below[y]; });
  height_.assign(k_, 0);
  for (auto b : by_rank)
    for (const auto& [lo, hi] : covers_)
      if (hi == b) height_[b] = std::max(height_[b], height_[lo] + 1);
}

std::optional<std::size_t> FiniteLattice::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<std::string> default_labels(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i < k; ++i) out.push_back(std::to_string(i));
  out.push_back("0");
  return out;
}

namespace {

void check_labels(std::vector<std::string>& labels, std::size_t k) {
  if (labels.empty()) labels = default_labels(k);
  if (labels.size() != k)
    throw Error(ErrorKind::invalid_argument,
                "expected " + std::to_string(k) + " labels, got " + std::to_string(labels.size()));
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw Error(ErrorKind::invalid_argument, "element labels must be distinct");
}

}  // namespace

FiniteLattice lattice_from_join(const LogicalMatrix& join, std::vector<std::string> labels) {
  const std::size_t k = join_arity(join);
  check_labels(labels, k);
  const auto verdict = verify_join_structure(join);
  if (!verdict.ok)
    throw LatticeError(ErrorKind::not_a_lattice, std::string("join table violates ") + to_string(*verdict.failed) + ": " +
                                                     verdict.message,
                       verdict.witness);

  Relation leq(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) leq[a * k + b] = join[a * k + b] == b;

  std::size_t bottom = 0;
  for (std::size_t i = 0; i < k; ++i)
    if (join.block(i * k, k).is_identity()) bottom = i;

  std::vector<std::uint32_t> meet(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      std::size_t acc = bottom;
      for (std::size_t u = 0; u < k; ++u)
        if (leq[u * k + a] && leq[u * k + b]) acc = join[acc * k + u];
      meet[a * k + b] = static_cast<std::uint32_t>(acc);
    }
  return FiniteLattice(std::move(labels), join, LogicalMatrix(k, std::move(meet)), std::move(leq));
}

void transitive_closure(Relation& rel, std::size_t k) {
  for (std::size_t a = 0; a < k; ++a) rel[a * k + a] = true;
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t a = 0; a < k; ++a)
      if (rel[a * k + c])
        for (std::size_t b = 0; b < k; ++b)
          if (rel[c * k + b]) rel[a * k + b] = true;
}

FiniteLattice lattice_from_order(const Relation& leq, std::vector<std::string> labels) {
  std::size_t k = 0;
  while (k * k < leq.size()) ++k;
  if (k == 0 || k * k != leq.size()) throw DimensionError("order relation must be k x k");
  check_labels(labels, k);
  auto le = [&](std::size_t a, std::size_t b) { return static_cast<bool>(leq[a * k + b]); };
  auto name = [&](std::size_t a) { return labels[a]; };

  for (std::size_t a = 0; a < k; ++a)
    if (!le(a, a)) throw LatticeError(ErrorKind::not_a_poset, "relation is not reflexive at " + name(a), {a});
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (le(a, b) && le(b, a))
        throw LatticeError(ErrorKind::not_a_poset, "relation is not antisymmetric on (" + name(a) + "," + name(b) + ")",
                           {a, b});
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c)
        if (le(a, b) && le(b, c) && !le(a, c))
          throw LatticeError(ErrorKind::not_a_poset,
                             "relation is not transitive on (" + name(a) + "," + name(b) + "," + name(c) + ")",
                             {a, b, c});

  // Least element of {u : a ≤ u, b ≤ u} (dually for meets).
  auto bound = [&](std::size_t a, std::size_t b, bool upper) -> std::optional<std::size_t> {
    auto rel = [&](std::size_t x, std::size_t y) { return upper ? le(x, y) : le(y, x); };
    std::vector<std::size_t> bounds;
    for (std::size_t u = 0; u < k; ++u)
      if (rel(a, u) && rel(b, u)) bounds.push_back(u);
    for (auto u : bounds)
      if (std::all_of(bounds.begin(), bounds.end(), [&](auto v) { return rel(u, v); })) return u;
    return std::nullopt;
  };

  std::vector<std::uint32_t> join(k * k), meet(k * k);
  for (int pass = 0; pass < 2; ++pass) {
    const bool upper = pass == 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a; b < k; ++b) {
        auto u = bound(a, b, upper);
        if (!u)
          throw LatticeError(ErrorKind::not_a_lattice,
                             std::string("pair (") + name(a) + "," + name(b) + ") has no " +
                                 (upper ? "least upper bound" : "greatest lower bound"),
                             {a, b});
        auto& table = upper ? join : meet;
        table[a * k + b] = table[b * k + a] = static_cast<std::uint32_t>(*u);
      }
  }
  return FiniteLattice(std::move(labels), LogicalMatrix(k, std::move(join)), LogicalMatrix(k, std::move(meet)), leq);
}

FiniteLattice lattice_from_covers(std::size_t k, const std::vector<std::pair<std::size_t, std::size_t>>& covers,
                                  std::vector<std::string> labels) {
  if (k == 0) throw DimensionError("lattice needs at least one element");
  Relation rel(k * k, false);
  for (const auto& [a, b] : covers) {
    if (a >= k || b >= k) throw Error(ErrorKind::invalid_argument, "cover pair references unknown element");
    rel[a * k + b] = true;
  }
  transitive_closure(rel, k);
  return lattice_from_order(rel, std::move(labels));
}

FiniteLattice chain(std::size_t k) {
  if (k == 0) throw DimensionError("chain: k must be positive");
  auto value = [k](std::size_t i) { return i + 1 < k ? i + 1 : 0; };
  Relation rel(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) rel[a * k + b] = value(a) <= value(b);
  return lattice_from_order(rel, default_labels(k));
}

FiniteLattice product(const FiniteLattice& l1, const FiniteLattice& l2) {
  const std::size_t k1 = l1.size(), k2 = l2.size(), k = k1 * k2;
  std::vector<std::string> labels;
  labels.reserve(k);
  for (std::size_t a = 0; a < k1; ++a)
    for (std::size_t b = 0; b < k2; ++b) labels.push_back("(" + l1.label(a) + "," + l2.label(b) + ")");
  std::vector<std::uint32_t> join(k * k);
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y)
      join[x * k + y] = static_cast<std::uint32_t>(l1.join(x / k2, y / k2) * k2 + l2.join(x % k2, y % k2));
  return lattice_from_join(LogicalMatrix(k, std::move(join)), std::move(labels));
}

FiniteLattice sublattice(const FiniteLattice& l, const std::vector<std::size_t>& subset) {
  if (subset.empty()) throw Error(ErrorKind::invalid_argument, "sublattice: subset is empty");
  std::vector<std::optional<std::size_t>> position(l.size());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] >= l.size()) throw Error(ErrorKind::invalid_argument, "sublattice: unknown element");
    if (position[subset[i]]) throw Error(ErrorKind::invalid_argument, "sublattice: repeated element " + l.label(subset[i]));
    position[subset[i]] = i;
  }
  const std::size_t s = subset.size();
  std::vector<std::uint32_t> join(s * s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i; j < s; ++j) {
      const auto a = subset[i], b = subset[j];
      for (bool use_join : {true, false}) {
        const auto r = use_join ? l.join(a, b) : l.meet(a, b);
        if (!position[r])
          throw LatticeError(ErrorKind::not_closed,
                             l.label(a) + (use_join ? " v " : " ^ ") + l.label(b) + " = " + l.label(r) +
                                 " escapes the subset",
                             {a, b, r});
      }
      join[i * s + j] = join[j * s + i] = static_cast<std::uint32_t>(*position[l.join(a, b)]);
    }
  std::vector<std::string> labels;
  for (auto a : subset) labels.push_back(l.label(a));
  return lattice_from_join(LogicalMatrix(s, std::move(join)), std::move(labels));
}

}  // namespace latnet
