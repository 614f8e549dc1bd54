#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latnet/error.hpp"
#include "latnet/stp.hpp"

namespace latnet {

/// Which axiom of a join structure matrix failed.
enum class JoinAxiom { idempotent, commutative, associative, identity };

const char* to_string(JoinAxiom axiom);

struct JoinVerdict {
  bool ok = true;
  std::optional<JoinAxiom> failed;
  /// 0-based elements: one for idempotency, a pair for commutativity, a
  /// triple for associativity; empty for the missing identity.
  std::vector<std::size_t> witness;
  std::string message;
};

/// Checks that M (k × k²) is the structure matrix of a join operator:
///   (i) M M_r = I_k, (ii) M W_[k,k] = M, (iii) M ⋉ M = M (I_k ⊗ M),
///   (iv) some block M_i = I_k.
/// Conditions are evaluated algebraically in that order; the first failing
/// one is reported together with a witness read off the join table.
JoinVerdict verify_join_structure(const LogicalMatrix& m);

/// k×k relation, row-major: leq[a*k+b] means a ≤ b.
using Relation = std::vector<bool>;

class LatticeError : public Error {
 public:
  using Error::Error;
};

/// A finite lattice on elements 0..k-1 (δ_k^{i+1} in vector form).
class FiniteLattice {
 public:
  std::size_t size() const noexcept { return k_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t a) const { return labels_.at(a); }
  std::optional<std::size_t> find(const std::string& label) const;

  const LogicalMatrix& join_matrix() const noexcept { return join_; }
  const LogicalMatrix& meet_matrix() const noexcept { return meet_; }

  std::size_t join(std::size_t a, std::size_t b) const { return join_[a * k_ + b]; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * k_ + b]; }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a * k_ + b]; }
  const Relation& order() const noexcept { return leq_; }

  std::size_t bottom() const noexcept { return bottom_; }
  std::size_t top() const noexcept { return top_; }
  /// Pairs (a, b) with b covering a, sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const noexcept { return covers_; }
  /// Length of the longest chain from bottom to a.
  std::size_t height(std::size_t a) const { return height_.at(a); }

  friend bool operator==(const FiniteLattice& x, const FiniteLattice& y) {
    return x.labels_ == y.labels_ && x.join_ == y.join_;
  }

 private:
  friend FiniteLattice lattice_from_join(const LogicalMatrix&, std::vector<std::string>);
  friend FiniteLattice lattice_from_order(const Relation&, std::vector<std::string>);

  FiniteLattice(std::vector<std::string> labels, LogicalMatrix join, LogicalMatrix meet, Relation leq);

  std::size_t k_;
  std::vector<std::string> labels_;
  LogicalMatrix join_;
  LogicalMatrix meet_;
  Relation leq_;
  std::size_t bottom_ = 0;
  std::size_t top_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
  std::vector<std::size_t> height_;
};

/// Labels "1".."k-1","0", the identification i ~ δ_k^i, 0 ~ δ_k^k.
std::vector<std::string> default_labels(std::size_t k);

/// Throws LatticeError (not_a_lattice) when verify_join_structure fails.
FiniteLattice lattice_from_join(const LogicalMatrix& join, std::vector<std::string> labels = {});

/// Throws LatticeError with kind not_a_poset or not_a_lattice. Joins are
/// checked for every pair before meets; the witness is the first failing pair.
FiniteLattice lattice_from_order(const Relation& leq, std::vector<std::string> labels = {});

/// Reflexive-transitive closure of the cover pairs, then lattice_from_order.
FiniteLattice lattice_from_covers(std::size_t k, const std::vector<std::pair<std::size_t, std::size_t>>& covers,
                                  std::vector<std::string> labels = {});

/// Chain on D_k = {0,...,k-1} ordered 0 < 1 < ... < k-1, with i ~ δ_k^i and
/// 0 ~ δ_k^k.
FiniteLattice chain(std::size_t k);

/// Componentwise product; element (a, b) has index a * |L2| + b.
FiniteLattice product(const FiniteLattice& l1, const FiniteLattice& l2);

/// Induced lattice on `subset`, re-indexed in the order given. Throws
/// LatticeError (not_closed) with witness {a, b, escaping element}.
FiniteLattice sublattice(const FiniteLattice& l, const std::vector<std::size_t>& subset);

/// Transitive-reflexive closure of a relation, in place.
void transitive_closure(Relation& rel, std::size_t k);

}  // namespace latnet
