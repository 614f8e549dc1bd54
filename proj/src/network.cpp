#include "latnet/network.hpp"

#include <algorithm>

namespace latnet {

LatticeExpr LatticeExpr::var(std::size_t i) { return LatticeExpr(std::make_shared<Node>(Node{Kind::var, i, 0, {}, {}})); }

LatticeExpr LatticeExpr::input(std::size_t s) {
  return LatticeExpr(std::make_shared<Node>(Node{Kind::input, s, 0, {}, {}}));
}

LatticeExpr LatticeExpr::constant(std::size_t a) {
  return LatticeExpr(std::make_shared<Node>(Node{Kind::constant, a, 0, {}, {}}));
}

LatticeExpr LatticeExpr::join(LatticeExpr l, LatticeExpr r) {
  return LatticeExpr(std::make_shared<Node>(
      Node{Kind::join, 0, 0, std::make_shared<const LatticeExpr>(std::move(l)), std::make_shared<const LatticeExpr>(std::move(r))}));
}

LatticeExpr LatticeExpr::meet(LatticeExpr l, LatticeExpr r) {
  return LatticeExpr(std::make_shared<Node>(
      Node{Kind::meet, 0, 0, std::make_shared<const LatticeExpr>(std::move(l)), std::make_shared<const LatticeExpr>(std::move(r))}));
}

LatticeExpr LatticeExpr::mab(std::size_t a, std::size_t b, LatticeExpr child) {
  return LatticeExpr(
      std::make_shared<Node>(Node{Kind::mab, a, b, std::make_shared<const LatticeExpr>(std::move(child)), {}}));
}

std::size_t LatticeExpr::depth() const {
  switch (kind()) {
    case Kind::join:
    case Kind::meet: return 1 + std::max(left().depth(), right().depth());
    case Kind::mab: return 1 + child().depth();
    default: return 0;
  }
}

void LatticeExpr::check(std::size_t k, std::size_t n, std::size_t m) const {
  switch (kind()) {
    case Kind::var:
      if (index() >= n) throw Error(ErrorKind::semantic, "state variable x" + std::to_string(index() + 1) + " out of range");
      break;
    case Kind::input:
      if (index() >= m) throw Error(ErrorKind::semantic, "input u" + std::to_string(index() + 1) + " out of range");
      break;
    case Kind::constant:
      if (index() >= k) throw Error(ErrorKind::semantic, "constant is not a lattice element");
      break;
    case Kind::mab:
      if (index() >= k || value() >= k) throw Error(ErrorKind::semantic, "m[a,b] parameter is not a lattice element");
      child().check(k, n, m);
      break;
    case Kind::join:
    case Kind::meet:
      left().check(k, n, m);
      right().check(k, n, m);
      break;
  }
}

bool operator==(const LatticeExpr& a, const LatticeExpr& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case LatticeExpr::Kind::var:
    case LatticeExpr::Kind::input:
    case LatticeExpr::Kind::constant: return a.index() == b.index();
    case LatticeExpr::Kind::mab: return a.index() == b.index() && a.value() == b.value() && a.child() == b.child();
    default: return a.left() == b.left() && a.right() == b.right();
  }
}

namespace {

void render(const LatticeExpr& e, const FiniteLattice& l, const std::vector<std::string>& xs,
            const std::vector<std::string>& us, std::string& out, int parent_prec) {
  using K = LatticeExpr::Kind;
  switch (e.kind()) {
    case K::var: out += xs.at(e.index()); return;
    case K::input: out += us.at(e.index()); return;
    case K::constant: out += "const " + l.label(e.index()); return;
    case K::mab:
      out += "m[" + l.label(e.index()) + "," + l.label(e.value()) + "](";
      render(e.child(), l, xs, us, out, 0);
      out += ")";
      return;
    case K::join:
    case K::meet: {
      // \/ binds looser than /\; both are left-associative.
      const int prec = e.kind() == K::join ? 1 : 2;
      const bool paren = prec < parent_prec;
      if (paren) out += "(";
      render(e.left(), l, xs, us, out, prec);
      out += e.kind() == K::join ? " \\/ " : " /\\ ";
      render(e.right(), l, xs, us, out, prec + 1);
      if (paren) out += ")";
      return;
    }
  }
}

}  // namespace

std::string to_string(const LatticeExpr& e, const FiniteLattice& lattice, const std::vector<std::string>& state_names,
                      const std::vector<std::string>& input_names) {
  std::string out;
  render(e, lattice, state_names, input_names, out, 0);
  return out;
}

void NetworkDef::validate() const {
  if (n == 0) throw Error(ErrorKind::semantic, "network needs at least one state");
  if (updates.size() != n)
    throw Error(ErrorKind::semantic,
                "expected " + std::to_string(n) + " update expressions, got " + std::to_string(updates.size()));
  for (const auto& u : updates) u.check(lattice.size(), n, m);
  for (const auto& y : outputs) y.check(lattice.size(), n, 0);
}

std::size_t ASSR::num_states() const { return checked_pow(k, n); }
std::size_t ASSR::num_inputs() const { return checked_pow(k, m); }

std::size_t ASSR::step(std::size_t u, std::size_t x) const { return M[u * num_states() + x]; }

LogicalMatrix mab_matrix(const FiniteLattice& lattice, std::size_t a, std::size_t b) {
  const std::size_t k = lattice.size();
  std::vector<std::uint32_t> images(k);
  for (std::size_t x = 0; x < k; ++x) images[x] = static_cast<std::uint32_t>(lattice.leq(a, x) ? b : lattice.bottom());
  return LogicalMatrix(k, std::move(images));
}

namespace {

LogicalMatrix compile_rec(const LatticeExpr& e, const FiniteLattice& l, std::size_t n, std::size_t m) {
  using K = LatticeExpr::Kind;
  const std::size_t k = l.size();
  const std::size_t arity = n + m;
  switch (e.kind()) {
    case K::var: return retrieval_matrix(k, arity, m + e.index() + 1);
    case K::input: return retrieval_matrix(k, arity, e.index() + 1);
    case K::constant:
      return LogicalMatrix(k, std::vector<std::uint32_t>(checked_pow(k, arity), static_cast<std::uint32_t>(e.index())));
    case K::mab: return stp(mab_matrix(l, e.index(), e.value()), compile_rec(e.child(), l, n, m));
    case K::join:
    case K::meet: {
      const LogicalMatrix parts[] = {compile_rec(e.left(), l, n, m), compile_rec(e.right(), l, n, m)};
      return stp(e.kind() == K::join ? l.join_matrix() : l.meet_matrix(), khatri_rao(parts));
    }
  }
  throw Error(ErrorKind::invalid_argument, "malformed expression");
}

}  // namespace

LogicalMatrix compile_expr(const LatticeExpr& e, const FiniteLattice& lattice, std::size_t n, std::size_t m) {
  e.check(lattice.size(), n, m);
  return compile_rec(e, lattice, n, m);
}

ASSR assemble(const NetworkDef& net) {
  net.validate();
  const std::size_t k = net.lattice.size();
  std::vector<LogicalMatrix> components;
  components.reserve(net.n);
  for (const auto& u : net.updates) components.push_back(compile_expr(u, net.lattice, net.n, net.m));
  auto M = khatri_rao(components);
  std::optional<LogicalMatrix> E;
  if (!net.outputs.empty()) {
    std::vector<LogicalMatrix> ys;
    for (const auto& y : net.outputs) ys.push_back(compile_expr(y, net.lattice, net.n, 0));
    E = khatri_rao(ys);
  }
  return ASSR{k, net.n, net.m, std::move(M), std::move(components), std::move(E)};
}

std::vector<LogicalMatrix> split_components(const LogicalMatrix& m, std::size_t k, std::size_t n) {
  if (k == 0 || n == 0) throw DimensionError("split_components: zero dimension");
  if (m.rows() != checked_pow(k, n))
    throw DimensionError("split_components: row count " + std::to_string(m.rows()) + " is not " + std::to_string(k) +
                         "^" + std::to_string(n));
  std::vector<LogicalMatrix> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(stp(retrieval_matrix(k, n, i), m));
  return out;
}

ASSR assr_from_matrix(const LogicalMatrix& m, std::size_t k, std::size_t n, std::size_t num_inputs) {
  const std::size_t states = checked_pow(k, n);
  if (m.cols() != states * checked_pow(k, num_inputs))
    throw DimensionError("structure matrix has " + std::to_string(m.cols()) + " columns, expected k^(n+m)");
  return ASSR{k, n, num_inputs, m, split_components(m, k, n), std::nullopt};
}

namespace {

std::size_t arity_of(const LogicalMatrix& mi, std::size_t k) {
  std::size_t arity = 0, cols = 1;
  while (cols < mi.cols()) {
    cols *= k;
    ++arity;
  }
  if (cols != mi.cols() || mi.rows() != k)
    throw DimensionError("expected a k x k^N structure matrix with k = " + std::to_string(k));
  return arity;
}

// Structure matrix with variable j (0-based) moved to the front:
// x_1 ... x_j = W_[k, k^{j}] ⋉ x_{j+1} ⋉ x_1 ... x_j.
LogicalMatrix rotate_to_front(const LogicalMatrix& mi, std::size_t k, std::size_t j) {
  return stp(mi, swap_matrix(k, checked_pow(k, j)));
}

}  // namespace

bool is_dumb(const LogicalMatrix& mi, std::size_t k, std::size_t j) {
  const std::size_t arity = arity_of(mi, k);
  if (j >= arity) throw DimensionError("is_dumb: variable index out of range");
  const auto rotated = rotate_to_front(mi, k, j);
  const std::size_t width = rotated.cols() / k;
  const auto first = rotated.block(0, width);
  for (std::size_t b = 1; b < k; ++b)
    if (rotated.block(b * width, width) != first) return false;
  return true;
}

ReducedFunction remove_dumb(const LogicalMatrix& mi, std::size_t k) {
  const std::size_t arity = arity_of(mi, k);
  ReducedFunction out{mi, {}, {}};
  // Walk from the last variable so earlier positions stay valid.
  std::vector<bool> dumb(arity, false);
  LogicalMatrix current = mi;
  for (std::size_t j = arity; j-- > 0;) {
    if (!is_dumb(current, k, j)) continue;
    dumb[j] = true;
    const auto rotated = rotate_to_front(current, k, j);
    current = rotated.block(0, rotated.cols() / k);
  }
  for (std::size_t j = 0; j < arity; ++j) (dumb[j] ? out.dumb : out.live).push_back(j);
  out.matrix = std::move(current);
  return out;
}

ASSR restrict(const ASSR& assr, const std::vector<std::size_t>& subset) {
  const std::size_t k = assr.k;
  const std::size_t s = subset.size();
  if (s == 0) throw Error(ErrorKind::invalid_argument, "restrict: subset is empty");
  std::vector<std::optional<std::size_t>> position(k);
  for (std::size_t i = 0; i < s; ++i) {
    if (subset[i] >= k || position[subset[i]]) throw Error(ErrorKind::invalid_argument, "restrict: invalid subset");
    position[subset[i]] = i;
  }
  const std::size_t n = assr.n, m = assr.m;
  const std::size_t full_states = assr.num_states();
  const std::size_t states = checked_pow(s, n), inputs = checked_pow(s, m);

  auto lift = [&](std::size_t index, std::size_t count) {
    auto digits = unstack_index(index, s, count);
    for (auto& d : digits) d = subset[d];
    return stack_index(digits, k);
  };
  auto lower = [&](std::size_t index, std::size_t count) -> std::optional<std::size_t> {
    auto digits = unstack_index(index, k, count);
    for (auto& d : digits) {
      if (!position[d]) return std::nullopt;
      d = *position[d];
    }
    return stack_index(digits, s);
  };

  std::vector<std::uint32_t> images(states * inputs);
  for (std::size_t u = 0; u < inputs; ++u)
    for (std::size_t x = 0; x < states; ++x) {
      const std::size_t fu = lift(u, m), fx = lift(x, n);
      auto next = lower(assr.M[fu * full_states + fx], n);
      if (!next)
        throw Error(ErrorKind::not_invariant, "trajectory leaves the subset from input " + std::to_string(fu + 1) +
                                                  ", state " + std::to_string(fx + 1),
                    {fu, fx});
      images[u * states + x] = static_cast<std::uint32_t>(*next);
    }
  LogicalMatrix M(states, std::move(images));

  std::optional<LogicalMatrix> E;
  if (assr.E) {
    std::size_t p = 0, rows = 1;
    while (rows < assr.E->rows()) {
      rows *= k;
      ++p;
    }
    std::vector<std::uint32_t> ys(states);
    for (std::size_t x = 0; x < states; ++x) {
      auto y = lower((*assr.E)[lift(x, n)], p);
      if (!y) throw Error(ErrorKind::not_invariant, "output leaves the subset", {0, lift(x, n)});
      ys[x] = static_cast<std::uint32_t>(*y);
    }
    E = LogicalMatrix(checked_pow(s, p), std::move(ys));
  }
  auto components = split_components(M, s, n);
  return ASSR{s, n, m, std::move(M), std::move(components), std::move(E)};
}

namespace {

Trajectory run(const ASSR& assr, std::size_t x0, const std::vector<std::size_t>& inputs) {
  if (x0 >= assr.num_states()) throw DimensionError("initial state index out of range");
  Trajectory t;
  t.states.push_back(x0);
  const std::size_t K = assr.num_inputs();
  for (auto u : inputs) {
    if (u >= K) throw DimensionError("input index out of range");
    t.states.push_back(assr.step(u, t.states.back()));
  }
  if (assr.E)
    for (auto x : t.states) t.outputs.push_back((*assr.E)[x]);
  return t;
}

}  // namespace

Trajectory simulate(const ASSR& assr, std::size_t x0, const std::vector<std::size_t>& inputs) {
  if (!assr.control_form() && !inputs.empty()) throw DimensionError("autonomous network takes no inputs");
  return run(assr, x0, inputs);
}

Trajectory simulate(const ASSR& assr, std::size_t x0, std::size_t steps) {
  if (assr.control_form() && steps > 0) throw DimensionError("control-form network needs one input per step");
  return run(assr, x0, std::vector<std::size_t>(steps, 0));
}

}  // namespace latnet
