#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latnet/network.hpp"

namespace latnet {

/// Square Boolean matrix (1 + 1 = 1), rows stored as 64-bit words.
class BoolMatrix {
 public:
  explicit BoolMatrix(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  bool get(std::size_t r, std::size_t c) const { return (rows_[r * words_ + c / 64] >> (c % 64)) & 1u; }
  void set(std::size_t r, std::size_t c) { rows_[r * words_ + c / 64] |= std::uint64_t{1} << (c % 64); }
  bool all() const;
  /// Row r as a "0101..." string.
  std::string row_string(std::size_t r) const;

  /// Boolean product.
  friend BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b);
  BoolMatrix& operator|=(const BoolMatrix& other);
  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
};

/// One-step transition matrix Σ_i P ⋉ δ_K^i: entry (r, c) is set when some
/// input moves state c to state r. `num_inputs` is K; P is N × K·N.
BoolMatrix transition_matrix(const LogicalMatrix& p, std::size_t num_inputs);

/// Σ_{j=1}^{N} T^{(j)} for T = transition_matrix(p). Entry (i, j) is set iff
/// state i is reachable from state j in at least one step.
BoolMatrix reachability_matrix(const LogicalMatrix& p, std::size_t num_inputs);

BoolMatrix controllability_matrix(const ASSR& assr);
/// Every state reaches every state (all entries of C set).
bool is_controllable(const ASSR& assr);

/// Auxiliary pair system G = P (I_{KN} ⊗ P)(I_K ⊗ W_[K,N]) M_{r,K}:
/// w(t+1) = G u(t) w(t) for w = z ⋉ z*, both copies driven by the same input.
LogicalMatrix pair_system(const LogicalMatrix& p, std::size_t num_inputs);

enum class DistinguishMode {
  /// Pair state must reach the output-distinguishing set in ≥ 1 steps.
  paper,
  /// Additionally counts pairs whose outputs already differ.
  standard,
};

const char* to_string(DistinguishMode mode);

struct Distinguishability {
  std::size_t num_states = 0;
  /// Pair states (0-based w = i*N + j) whose outputs differ.
  std::vector<std::size_t> output_distinguishing;
  /// Per pair state: can reach the distinguishing set in ≥ 1 steps.
  std::vector<bool> reach_indicator;
  /// Unordered distinguishable pairs (i < j), 0-based, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  bool distinguishable(std::size_t i, std::size_t j) const;
};

/// G is the pair system over N states and K inputs; E has N columns.
Distinguishability distinguishable_pairs(const LogicalMatrix& g, std::size_t num_inputs, const LogicalMatrix& e,
                                         DistinguishMode mode = DistinguishMode::paper);

/// Runs the pair-system pipeline on an ASSR with outputs.
Distinguishability distinguishability(const ASSR& assr, DistinguishMode mode = DistinguishMode::paper);

struct ObservabilityVerdict {
  bool observable = true;
  /// First indistinguishable pair (0-based), if any.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  Distinguishability detail;
};

ObservabilityVerdict is_observable(const ASSR& assr, DistinguishMode mode = DistinguishMode::paper);

struct FactorSystems {
  ASSR first;
  ASSR second;
};

/// Splits a network over L1 × L2 (|L1| = k1, |L2| = k2, element (a, b) at
/// index a*k2 + b) into its factor networks. Every lift of a factor point is
/// evaluated; differing projections raise Error(not_decomposable).
FactorSystems factor_network(const ASSR& assr, std::size_t k1, std::size_t k2);

enum class Property { controllability, observability };

/// Conjunction of the factor verdicts.
bool product_verdict(const FactorSystems& factors, Property property, DistinguishMode mode = DistinguishMode::paper);

/// How factor distinguishability combines into product-pair
/// distinguishability, compared against the direct whole-system computation.
struct CombinationReport {
  std::size_t product_pairs = 0;
  std::size_t direct_distinguishable = 0;
  std::size_t conjunction_distinguishable = 0;
  std::size_t disjunction_distinguishable = 0;
  bool conjunction_matches = false;
  bool disjunction_matches = false;
  bool direct_observable = false;
};

CombinationReport combination_report(const ASSR& product_system, const FactorSystems& factors, std::size_t k1,
                                     std::size_t k2, DistinguishMode mode = DistinguishMode::paper);

}  // namespace latnet
