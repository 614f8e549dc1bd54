#include "latnet/io.hpp"

#include <map>
#include <sstream>

namespace latnet::io {

namespace {

std::string dot_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DimensionError(std::string("matrix JSON lacks \"") + key + "\"");
  return j.at(key);
}

std::size_t count(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_unsigned()) throw DimensionError(std::string("\"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

// Argument names of a component: inputs first, then states.
std::string argument_name(std::size_t position, std::size_t m) {
  return position < m ? "u" + std::to_string(position + 1) : "x" + std::to_string(position - m + 1);
}

Json edge_list(const ComparabilityGraph& g, const std::vector<std::string>& labels) {
  Json out = Json::array();
  for (auto [a, b] : g.edges()) out.push_back({labels[a], labels[b]});
  return out;
}

}  // namespace

Json to_json(const LogicalMatrix& m) {
  Json cols = Json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m[c] + 1);
  return Json{{"rows", m.rows()}, {"cols", std::move(cols)}};
}

Json to_json(const IntMatrix& m) {
  Json cols = Json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return Json{{"rows", m.rows()}, {"colsDense", std::move(cols)}};
}

LogicalMatrix logical_from_json(const Json& j) {
  const std::size_t rows = count(j, "rows");
  const auto& cols = field(j, "cols");
  if (!cols.is_array()) throw DimensionError("\"cols\" must be an array");
  std::vector<std::size_t> idx;
  idx.reserve(cols.size());
  for (const auto& c : cols) {
    if (!c.is_number_unsigned()) throw DimensionError("column indices must be positive integers");
    idx.push_back(c.get<std::size_t>());
  }
  return LogicalMatrix::delta(rows, idx);
}

Json to_json(const BoolMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.size(); ++r) rows.push_back(m.row_string(r));
  return rows;
}

Json lattice_json(const FiniteLattice& l) {
  Json covers = Json::array();
  for (auto [lo, hi] : l.covers()) covers.push_back({l.label(lo), l.label(hi)});
  return Json{{"k", l.size()},
              {"labels", l.labels()},
              {"join", to_json(l.join_matrix())},
              {"meet", to_json(l.meet_matrix())},
              {"bottom", l.label(l.bottom())},
              {"top", l.label(l.top())},
              {"covers", std::move(covers)}};
}

Json assr_json(const ASSR& a) {
  Json comps = Json::array();
  for (const auto& c : a.components) comps.push_back(to_json(c));
  return Json{{"k", a.k},
              {"n", a.n},
              {"m", a.m},
              {"M", to_json(a.M)},
              {"components", std::move(comps)},
              {"E", a.E ? to_json(*a.E) : Json(nullptr)}};
}

MatrixModel matrix_model_from_json(const Json& j) {
  const std::size_t k = count(j, "k");
  const std::size_t n = count(j, "n");
  const std::size_t m = j.contains("m") ? count(j, "m") : 0;
  if (k == 0 || n == 0) throw DimensionError("k and n must be positive");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const auto& ls = j.at("labels");
    if (!ls.is_array()) throw DimensionError("\"labels\" must be an array of strings");
    for (const auto& s : ls) {
      if (!s.is_string()) throw DimensionError("\"labels\" must be an array of strings");
      labels.push_back(s.get<std::string>());
    }
    if (labels.size() != k) throw DimensionError("expected " + std::to_string(k) + " labels");
  } else {
    labels = default_labels(k);
  }
  const auto M = logical_from_json(field(j, "M"));
  if (M.rows() != checked_pow(k, n))
    throw DimensionError("M has " + std::to_string(M.rows()) + " rows, expected k^n = " +
                         std::to_string(checked_pow(k, n)));
  auto assr = assr_from_matrix(M, k, n, m);
  if (j.contains("E") && !j.at("E").is_null()) {
    assr.E = logical_from_json(j.at("E"));
    if (assr.E->cols() != assr.num_states()) throw DimensionError("E must have k^n columns");
  }
  return {std::move(assr), std::move(labels)};
}

std::string state_label(std::size_t index, std::size_t n, const std::vector<std::string>& labels) {
  const auto digits = unstack_index(index, labels.size(), n);
  if (n == 1) return labels[digits[0]];
  std::string out = "(";
  for (std::size_t i = 0; i < n; ++i) out += (i ? "," : "") + labels[digits[i]];
  return out + ")";
}

Json recovery_json(const RecoveryReport& r) {
  Json comps = Json::array();
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    const auto& c = r.components[i];
    Json live = Json::array(), dumb = Json::array();
    for (auto p : c.live) live.push_back(argument_name(p, r.m));
    for (auto p : c.dumb) dumb.push_back(argument_name(p, r.m));
    comps.push_back({{"node", i + 1}, {"live", live}, {"dumb", dumb}, {"edges", edge_list(c.graph, r.labels)}});
  }

  Json orientation = nullptr;
  if (r.orientation) {
    Json arcs = Json::array();
    for (auto [a, b] : r.orientation->arcs()) arcs.push_back({r.labels[a], r.labels[b]});
    orientation = {{"method", to_string(r.method)},
                   {"arcs", std::move(arcs)},
                   {"sorting", sorting_string(r.topological_order, r.labels)}};
  }

  Json violation = nullptr;
  if (r.violation) {
    const auto& v = *r.violation;
    const std::size_t arity = r.components[v.component].live.size();
    auto assignment = [&](std::size_t x) {
      Json out = Json::object();
      const auto digits = unstack_index(x, r.k, arity);
      for (std::size_t i = 0; i < arity; ++i)
        out[argument_name(r.components[v.component].live[i], r.m)] = r.labels[digits[i]];
      return out;
    };
    violation = {{"node", v.component + 1},
                 {"lower", assignment(v.lower)},
                 {"upper", assignment(v.upper)},
                 {"lower_value", r.labels[v.lower_value]},
                 {"upper_value", r.labels[v.upper_value]}};
  }

  return Json{{"k", r.k},
              {"labels", r.labels},
              {"mode", to_string(r.mode)},
              {"stage", to_string(r.stage)},
              {"components", std::move(comps)},
              {"graph", edge_list(r.graph, r.labels)},
              {"orientation", std::move(orientation)},
              {"orientations_tried", r.orientations_tried},
              {"lattice", r.lattice ? lattice_json(*r.lattice) : Json(nullptr)},
              {"generated_by_basic_operators", r.generated_by_basic_operators},
              {"monotone", r.lattice ? Json(!r.violation) : Json(nullptr)},
              {"violation", std::move(violation)},
              {"canonical_forms_verified", r.canonical_forms_verified},
              {"message", r.message}};
}

std::string hasse_dot(const FiniteLattice& l, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << dot_string(name) << " {\n  rankdir=BT;\n  node [shape=circle];\n";
  std::map<std::size_t, std::vector<std::size_t>> by_height;
  for (std::size_t a = 0; a < l.size(); ++a) {
    out << "  n" << a << " [label=" << dot_string(l.label(a)) << "];\n";
    by_height[l.height(a)].push_back(a);
  }
  for (auto [lo, hi] : l.covers()) out << "  n" << lo << " -> n" << hi << ";\n";
  for (const auto& [h, nodes] : by_height) {
    if (nodes.size() < 2) continue;
    out << "  { rank=same;";
    for (auto a : nodes) out << " n" << a << ";";
    out << " }\n";
  }
  out << "}\n";
  return out.str();
}

std::string comparability_dot(const ComparabilityGraph& g, const std::vector<std::string>& labels,
                              const std::string& name) {
  std::ostringstream out;
  out << "graph " << dot_string(name) << " {\n  node [shape=circle];\n";
  for (std::size_t a = 0; a < g.size(); ++a) out << "  n" << a << " [label=" << dot_string(labels[a]) << "];\n";
  for (auto [a, b] : g.edges()) out << "  n" << a << " -- n" << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string transition_dot(const ASSR& a, const std::vector<std::string>& labels, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << dot_string(name) << " {\n  node [shape=box];\n";
  const std::size_t N = a.num_states(), K = a.num_inputs();
  for (std::size_t x = 0; x < N; ++x) out << "  s" << x << " [label=" << dot_string(state_label(x, a.n, labels)) << "];\n";
  for (std::size_t x = 0; x < N; ++x) {
    std::map<std::size_t, std::vector<std::size_t>> by_target;
    for (std::size_t u = 0; u < K; ++u) by_target[a.step(u, x)].push_back(u);
    for (const auto& [y, us] : by_target) {
      out << "  s" << x << " -> s" << y;
      if (a.control_form()) {
        std::string label;
        for (std::size_t i = 0; i < us.size(); ++i) label += (i ? " | " : "") + state_label(us[i], a.m, labels);
        out << " [label=" << dot_string(label) << "]";
      }
      out << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace latnet::io
