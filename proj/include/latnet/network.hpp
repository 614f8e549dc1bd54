#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "latnet/lattice.hpp"
#include "latnet/stp.hpp"

namespace latnet {

/// Immutable expression tree over lattice operators.
///
/// Var and Input indices are 0-based. Const/MAB parameters are element
/// indices of the lattice the expression is compiled against. MAB is the
/// piecewise constant m_{a,b}(x) = b if a ≤ x, bottom otherwise.
class LatticeExpr {
 public:
  enum class Kind { var, input, constant, join, meet, mab };

  static LatticeExpr var(std::size_t i);
  static LatticeExpr input(std::size_t s);
  static LatticeExpr constant(std::size_t a);
  static LatticeExpr join(LatticeExpr l, LatticeExpr r);
  static LatticeExpr meet(LatticeExpr l, LatticeExpr r);
  static LatticeExpr mab(std::size_t a, std::size_t b, LatticeExpr child);

  Kind kind() const noexcept { return node_->kind; }
  /// Var/Input index, Const element, or the `a` parameter of MAB.
  std::size_t index() const noexcept { return node_->index; }
  /// The `b` parameter of MAB.
  std::size_t value() const noexcept { return node_->value; }
  const LatticeExpr& left() const { return *node_->left; }
  const LatticeExpr& right() const { return *node_->right; }
  /// Child of MAB.
  const LatticeExpr& child() const { return *node_->left; }

  std::size_t depth() const;
  /// Throws Error(semantic) when an index is outside the declared arity.
  void check(std::size_t k, std::size_t n, std::size_t m) const;

  friend bool operator==(const LatticeExpr& a, const LatticeExpr& b);

 private:
  struct Node {
    Kind kind;
    std::size_t index = 0;
    std::size_t value = 0;
    std::shared_ptr<const LatticeExpr> left;
    std::shared_ptr<const LatticeExpr> right;
  };
  explicit LatticeExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Infix rendering with \/ and /\, using `names` for states then inputs.
std::string to_string(const LatticeExpr& e, const FiniteLattice& lattice, const std::vector<std::string>& state_names,
                      const std::vector<std::string>& input_names);

struct NetworkDef {
  FiniteLattice lattice;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<LatticeExpr> updates;
  /// Output expressions; may reference states only.
  std::vector<LatticeExpr> outputs;

  /// Throws Error(semantic) on n = 0, a wrong update count or ill-formed
  /// expressions.
  void validate() const;
};

/// Algebraic state space representation x(t+1) = M u(t) x(t) (control form,
/// m > 0) or x(t+1) = M x(t) (m = 0), with optional output map y = E x.
struct ASSR {
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  LogicalMatrix M;
  std::vector<LogicalMatrix> components;
  std::optional<LogicalMatrix> E;

  std::size_t num_states() const;
  std::size_t num_inputs() const;
  bool control_form() const noexcept { return m > 0; }
  /// Next state (0-based) from input index u and state index x.
  std::size_t step(std::size_t u, std::size_t x) const;
};

/// Structure matrix of `e`, k × k^{m+n}, variable order u_1..u_m x_1..x_n.
/// Built with semi-tensor products: a Join node is M_∨ ⋉ (M_l * M_r).
LogicalMatrix compile_expr(const LatticeExpr& e, const FiniteLattice& lattice, std::size_t n, std::size_t m);

/// Structure matrix of m_{a,b} on its own (k × k).
LogicalMatrix mab_matrix(const FiniteLattice& lattice, std::size_t a, std::size_t b);

ASSR assemble(const NetworkDef& net);

/// M_i = R_i ⋉ M for i = 1..n. Throws DimensionError unless rows = k^n.
std::vector<LogicalMatrix> split_components(const LogicalMatrix& m, std::size_t k, std::size_t n);

/// ASSR view of a raw structure matrix (k^n × k^{n+m}).
ASSR assr_from_matrix(const LogicalMatrix& m, std::size_t k, std::size_t n, std::size_t num_inputs = 0);

/// True iff the function with structure matrix `mi` (k × k^N) does not depend
/// on its variable `j` (0-based).
bool is_dumb(const LogicalMatrix& mi, std::size_t k, std::size_t j);

struct ReducedFunction {
  LogicalMatrix matrix;
  /// 0-based positions (in the original argument list) that were kept.
  std::vector<std::size_t> live;
  std::vector<std::size_t> dumb;
};

/// Removes every dumb variable of `mi` (k × k^N).
ReducedFunction remove_dumb(const LogicalMatrix& mi, std::size_t k);

/// Restriction to the sublattice given by `subset` (element indices of the
/// original lattice, in the new index order). Throws Error(not_invariant)
/// with witness {input index, state index} (0-based, original numbering)
/// when the image of an S-valued point leaves S.
ASSR restrict(const ASSR& assr, const std::vector<std::size_t>& subset);

struct Trajectory {
  std::vector<std::size_t> states;
  std::vector<std::size_t> outputs;
};

/// Control form: `inputs` supplies one stacked input index per step.
Trajectory simulate(const ASSR& assr, std::size_t x0, const std::vector<std::size_t>& inputs);
/// Autonomous form.
Trajectory simulate(const ASSR& assr, std::size_t x0, std::size_t steps);

}  // namespace latnet
