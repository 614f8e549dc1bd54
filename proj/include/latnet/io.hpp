#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "latnet/analysis.hpp"
#include "latnet/lattice.hpp"
#include "latnet/network.hpp"
#include "latnet/recovery.hpp"
#include "latnet/stp.hpp"

namespace latnet::io {

using Json = nlohmann::ordered_json;

/// {"rows": r, "cols": [...]} with 1-based column indices, as in δ_r[...].
Json to_json(const LogicalMatrix& m);
/// {"rows": r, "colsDense": [[...], ...]}, one array per column.
Json to_json(const IntMatrix& m);
/// Throws DimensionError on malformed input.
LogicalMatrix logical_from_json(const Json& j);

/// Rows as "0101..." strings.
Json to_json(const BoolMatrix& m);

Json lattice_json(const FiniteLattice& l);

/// {"k", "n", "m", "M", "components", "E"}; E is null without outputs.
Json assr_json(const ASSR& a);

/// A raw structure matrix: {"k", "n", "m" (optional), "labels" (optional),
/// "M": {"rows", "cols"}, "E" (optional)}.
struct MatrixModel {
  ASSR assr;
  std::vector<std::string> labels;
};
MatrixModel matrix_model_from_json(const Json& j);

/// Tuple of element labels for a stacked state index, e.g. "(P1,P4)"; a single
/// node prints its bare label.
std::string state_label(std::size_t index, std::size_t n, const std::vector<std::string>& labels);

Json recovery_json(const RecoveryReport& r);

/// Hasse diagram: edges from covered to covering element, ranks by height.
std::string hasse_dot(const FiniteLattice& l, const std::string& name);
std::string comparability_dot(const ComparabilityGraph& g, const std::vector<std::string>& labels,
                              const std::string& name);
/// State-transition graph, one edge per (state, successor) labelled with the
/// inputs that realise it.
std::string transition_dot(const ASSR& a, const std::vector<std::string>& labels, const std::string& name);

}  // namespace latnet::io
