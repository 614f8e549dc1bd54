#include "latnet/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "latnet/analysis.hpp"
#include "latnet/dsl.hpp"
#include "latnet/io.hpp"
#include "latnet/recovery.hpp"

namespace latnet::cli {

namespace {

using io::Json;

constexpr std::size_t default_max_columns = 1000000;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::invalid_argument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_json_path(const std::string& path) { return path.size() >= 5 && path.substr(path.size() - 5) == ".json"; }

void guard(std::size_t columns, const char* what) {
  if (columns > max_columns())
    throw Error(ErrorKind::state_space_cap, std::string(what) + " would have " + std::to_string(columns) +
                                                " columns, above the cap of " + std::to_string(max_columns()) +
                                                " (set LATNET_MAX_COLUMNS to raise it)");
}

std::size_t safe_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) throw DimensionError("size overflow");
  return a * b;
}

/// The system a command works on: a DSL network or a raw structure matrix.
struct Subject {
  std::string name;
  std::optional<ASSR> assr;
  std::vector<std::string> labels;
  std::optional<FiniteLattice> lattice;
  const dsl::NetworkDecl* network = nullptr;
  std::optional<dsl::ModelFile> model;
};

struct Options {
  std::string model;
  std::string network;
  std::string lattice;
};

dsl::ModelFile load_model(const std::string& path) {
  const auto text = read_file(path);
  return dsl::parse_model(text);
}

Subject load_subject(const Options& o) {
  Subject s;
  if (is_json_path(o.model)) {
    Json j;
    try {
      j = Json::parse(read_file(o.model));
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::parse, o.model + ": invalid JSON: " + e.what());
    }
    auto mm = io::matrix_model_from_json(j);
    guard(mm.assr.M.cols(), "the structure matrix");
    s.name = std::filesystem::path(o.model).stem().string();
    s.assr = std::move(mm.assr);
    s.labels = std::move(mm.labels);
    return s;
  }
  s.model = load_model(o.model);
  const auto& nets = s.model->networks;
  if (!o.network.empty()) {
    s.network = s.model->find_network(o.network);
    if (!s.network) throw Error(ErrorKind::semantic, "model has no network '" + o.network + "'");
  } else if (nets.size() == 1) {
    s.network = &nets.front();
  } else {
    throw Error(ErrorKind::semantic, nets.empty() ? "model declares no network"
                                                  : "model declares several networks; choose one with --network");
  }
  const auto& def = s.network->def;
  guard(checked_pow(def.lattice.size(), def.n + def.m), "the structure matrix");
  s.name = s.network->name;
  s.assr = assemble(def);
  s.labels = def.lattice.labels();
  s.lattice = def.lattice;
  return s;
}

// Splits "a,b" or "(a,b)" at top-level commas.
std::vector<std::string> split_tuple(std::string text) {
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
    int depth = 0;
    bool wraps = true;
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
      depth += text[i] == '(' ? 1 : text[i] == ')' ? -1 : 0;
      if (depth == 0) wraps = false;
    }
    if (wraps) text = text.substr(1, text.size() - 2);
  }
  std::vector<std::string> out{""};
  int depth = 0;
  for (char c : text) {
    if (c == ',' && depth == 0) {
      out.emplace_back();
      continue;
    }
    depth += c == '(' ? 1 : c == ')' ? -1 : 0;
    out.back() += c;
  }
  return out;
}

std::size_t parse_point(const std::string& text, std::size_t arity, const std::vector<std::string>& labels,
                        const char* what) {
  // A lone element whose label looks like a tuple, e.g. "(1,2)" over a product.
  const bool whole = arity == 1 && std::find(labels.begin(), labels.end(), text) != labels.end();
  const auto parts = whole ? std::vector<std::string>{text} : split_tuple(text);
  if (parts.size() != arity)
    throw Error(ErrorKind::invalid_argument, std::string(what) + " '" + text + "' needs " + std::to_string(arity) +
                                                 " element labels");
  std::vector<std::size_t> digits;
  for (const auto& p : parts) {
    auto it = std::find(labels.begin(), labels.end(), p);
    if (it == labels.end()) throw Error(ErrorKind::invalid_argument, std::string(what) + ": unknown element '" + p + "'");
    digits.push_back(static_cast<std::size_t>(it - labels.begin()));
  }
  return stack_index(digits, labels.size());
}

Json pair_list(const std::vector<std::pair<std::size_t, std::size_t>>& pairs, const Subject& s) {
  Json out = Json::array();
  for (auto [i, j] : pairs) out.push_back({io::state_label(i, s.assr->n, s.labels), io::state_label(j, s.assr->n, s.labels)});
  return out;
}

void print(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// --- subcommands ---------------------------------------------------------

int check_lattice(const Options& o, std::ostream& out) {
  const auto model = load_model(o.model);
  std::vector<const dsl::LatticeDecl*> decls;
  if (!o.lattice.empty()) {
    const auto* d = model.find_lattice(o.lattice);
    if (!d) throw Error(ErrorKind::semantic, "model has no lattice '" + o.lattice + "'");
    decls.push_back(d);
  } else {
    for (const auto& d : model.lattices) decls.push_back(&d);
  }
  if (decls.empty()) throw Error(ErrorKind::semantic, "model declares no lattice");

  bool all_ok = true;
  Json results = Json::array();
  for (const auto* d : decls) {
    Json r{{"name", d->name}, {"ok", d->lattice.has_value()}};
    if (d->lattice) {
      r["lattice"] = io::lattice_json(*d->lattice);
    } else {
      all_ok = false;
      auto labels = d->labels;
      if (d->form == dsl::LatticeForm::sublattice) labels = model.find_lattice(d->operands[0])->lattice->labels();
      if (labels.empty()) labels = default_labels(d->form == dsl::LatticeForm::join
                                                      ? static_cast<std::size_t>(std::llround(std::sqrt(d->table.size())))
                                                      : 0);
      Json witness = Json::array();
      Json failure{{"message", d->error->what()}};
      if (d->form == dsl::LatticeForm::join) {
        const std::size_t k = labels.size();
        const auto verdict = verify_join_structure(LogicalMatrix::delta(k, d->table));
        failure["axiom"] = verdict.failed ? Json(to_string(*verdict.failed)) : Json(nullptr);
        for (auto w : verdict.witness) witness.push_back(labels.at(w));
      } else {
        for (auto w : d->error->witness()) witness.push_back(w < labels.size() ? labels[w] : std::to_string(w));
      }
      failure["witness"] = std::move(witness);
      r["failure"] = std::move(failure);
    }
    results.push_back(std::move(r));
  }
  print(out, Json{{"lattices", std::move(results)}});
  return all_ok ? success : property_fails;
}

int compile(const Options& o, std::ostream& out) {
  const auto s = load_subject(o);
  Json j{{"network", s.name}, {"labels", s.labels}};
  if (s.network) {
    Json updates = Json::array(), outputs = Json::array();
    const auto& n = *s.network;
    for (std::size_t i = 0; i < n.states.size(); ++i)
      updates.push_back(n.states[i] + "' = " + dsl::print_expr(n.def.updates[i], n.def.lattice, n.states, n.inputs));
    for (std::size_t i = 0; i < n.output_names.size(); ++i)
      outputs.push_back(n.output_names[i] + " = " + dsl::print_expr(n.def.outputs[i], n.def.lattice, n.states, n.inputs));
    j["states"] = n.states;
    j["inputs"] = n.inputs;
    j["updates"] = std::move(updates);
    j["outputs"] = std::move(outputs);
  }
  j["assr"] = io::assr_json(*s.assr);
  print(out, j);
  return success;
}

int controllability(const Options& o, const std::string& from, const std::string& to, std::ostream& out) {
  const auto s = load_subject(o);
  const std::size_t N = s.assr->num_states();
  guard(safe_mul(N, N), "the reachability matrix");
  const auto C = controllability_matrix(*s.assr);
  const bool controllable = C.all();
  Json j{{"network", s.name}, {"states", N}, {"controllable", controllable}, {"matrix", io::to_json(C)}};
  int code = controllable ? success : property_fails;
  if (!from.empty() || !to.empty()) {
    if (from.empty() || to.empty()) throw Error(ErrorKind::invalid_argument, "--from and --to go together");
    const auto a = parse_point(from, s.assr->n, s.labels, "--from");
    const auto b = parse_point(to, s.assr->n, s.labels, "--to");
    const bool reachable = C.get(b, a);
    j["query"] = {{"from", io::state_label(a, s.assr->n, s.labels)},
                  {"to", io::state_label(b, s.assr->n, s.labels)},
                  {"reachable", reachable}};
    code = reachable ? success : property_fails;
  }
  print(out, j);
  return code;
}

DistinguishMode parse_mode(const std::string& m) {
  return m == "standard" ? DistinguishMode::standard : DistinguishMode::paper;
}

int observability(const Options& o, const std::string& mode_name, std::ostream& out) {
  const auto s = load_subject(o);
  if (!s.assr->E) throw Error(ErrorKind::semantic, "network '" + s.name + "' has no outputs");
  const std::size_t N = s.assr->num_states();
  guard(safe_mul(safe_mul(N, N), s.assr->num_inputs()), "the pair system");
  const auto mode = parse_mode(mode_name);
  const auto v = is_observable(*s.assr, mode);
  std::vector<std::pair<std::size_t, std::size_t>> differing;
  for (auto w : v.detail.output_distinguishing)
    if (w / N < w % N) differing.emplace_back(w / N, w % N);
  Json j{{"network", s.name},
         {"mode", to_string(mode)},
         {"states", N},
         {"output_distinguishing", pair_list(differing, s)},
         {"distinguishable", pair_list(v.detail.pairs, s)},
         {"distinguishable_count", v.detail.pairs.size()},
         {"observable", v.observable},
         {"witness", v.witness ? pair_list({*v.witness}, s)[0] : Json(nullptr)}};
  print(out, j);
  return v.observable ? success : property_fails;
}

int factor(const Options& o, std::size_t k1, const std::string& mode_name, std::ostream& out) {
  const auto s = load_subject(o);
  if (k1 == 0 && s.network) {
    const auto* decl = s.model->find_lattice(s.network->lattice);
    if (decl->form == dsl::LatticeForm::product) k1 = s.model->find_lattice(decl->operands[0])->lattice->size();
  }
  if (k1 == 0) throw Error(ErrorKind::semantic, "lattice is not declared as a product; give --k1");
  if (s.assr->k % k1 != 0)
    throw DimensionError(std::to_string(k1) + " does not divide the lattice size " + std::to_string(s.assr->k));
  const std::size_t k2 = s.assr->k / k1;
  const std::size_t N = s.assr->num_states();
  guard(safe_mul(N, N), "the reachability matrix");
  const auto mode = parse_mode(mode_name);

  FactorSystems fs = [&] {
    try {
      return factor_network(*s.assr, k1, k2);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::not_decomposable) throw;
      print(out, Json{{"network", s.name}, {"k1", k1}, {"k2", k2}, {"decomposable", false}, {"message", e.what()}});
      throw;
    }
  }();

  Json factors = Json::array();
  for (const auto* f : {&fs.first, &fs.second}) {
    Json fj = io::assr_json(*f);
    fj["controllable"] = is_controllable(*f);
    fj["observable"] = f->E ? Json(is_observable(*f, mode).observable) : Json(nullptr);
    factors.push_back(std::move(fj));
  }
  Json j{{"network", s.name}, {"k1", k1}, {"k2", k2}, {"decomposable", true}, {"mode", to_string(mode)}};
  j["factors"] = std::move(factors);
  j["product_verdict"] = {{"controllable", product_verdict(fs, Property::controllability)},
                          {"observable", s.assr->E ? Json(product_verdict(fs, Property::observability, mode))
                                                   : Json(nullptr)}};
  Json direct{{"controllable", is_controllable(*s.assr)}};
  if (s.assr->E) {
    guard(safe_mul(safe_mul(N, N), s.assr->num_inputs()), "the pair system");
    const auto c = combination_report(*s.assr, fs, k1, k2, mode);
    direct["observable"] = c.direct_observable;
    j["combination"] = {{"product_pairs", c.product_pairs},
                        {"direct_distinguishable", c.direct_distinguishable},
                        {"conjunction_distinguishable", c.conjunction_distinguishable},
                        {"disjunction_distinguishable", c.disjunction_distinguishable},
                        {"conjunction_matches", c.conjunction_matches},
                        {"disjunction_matches", c.disjunction_matches}};
  } else {
    direct["observable"] = nullptr;
  }
  j["direct"] = std::move(direct);
  print(out, j);
  return success;
}

RecoveryReport recover_subject(const Subject& s, const std::string& mode_name) {
  const auto mode = mode_name == "comparable" ? PairMode::comparable : PairMode::monotone;
  return recover_lattice(*s.assr, mode, s.labels);
}

int recover(const Options& o, const std::string& mode_name, std::ostream& out) {
  const auto s = load_subject(o);
  const auto r = recover_subject(s, mode_name);
  Json j{{"network", s.name}};
  const auto report = io::recovery_json(r);
  for (const auto& [key, value] : report.items()) j[key] = value;
  print(out, j);
  return r.stage == RecoveryStage::ok ? success : property_fails;
}

int simulate_cmd(const Options& o, const std::string& x0_text, const std::string& inputs_text,
                 std::optional<std::size_t> steps, std::ostream& out) {
  const auto s = load_subject(o);
  const auto& a = *s.assr;
  if (x0_text.empty()) throw Error(ErrorKind::invalid_argument, "--x0 is required");
  const auto x0 = parse_point(x0_text, a.n, s.labels, "--x0");
  Trajectory t;
  if (a.control_form()) {
    std::vector<std::size_t> inputs;
    if (!inputs_text.empty()) {
      std::stringstream ss(inputs_text);
      std::string item;
      while (std::getline(ss, item, ';')) inputs.push_back(parse_point(item, a.m, s.labels, "--inputs"));
    }
    if (steps && *steps != inputs.size())
      throw Error(ErrorKind::invalid_argument, "--steps " + std::to_string(*steps) + " but " +
                                                   std::to_string(inputs.size()) + " inputs were given");
    t = simulate(a, x0, inputs);
  } else {
    if (!inputs_text.empty()) throw Error(ErrorKind::invalid_argument, "network has no inputs");
    t = simulate(a, x0, steps.value_or(0));
  }
  Json states = Json::array(), outputs = Json::array();
  for (auto x : t.states) states.push_back(io::state_label(x, a.n, s.labels));
  const std::size_t p = a.E ? s.network ? s.network->output_names.size() : 0 : 0;
  for (auto y : t.outputs) outputs.push_back(p ? io::state_label(y, p, s.labels) : std::to_string(y + 1));
  Json j{{"network", s.name}, {"states", std::move(states)}};
  j["outputs"] = a.E ? std::move(outputs) : Json(nullptr);
  print(out, j);
  return success;
}

int render(const Options& o, const std::string& what, std::ostream& out) {
  if (what == "hasse") {
    if (!is_json_path(o.model)) {
      const auto model = load_model(o.model);
      const dsl::LatticeDecl* decl = nullptr;
      if (!o.lattice.empty()) {
        decl = model.find_lattice(o.lattice);
        if (!decl) throw Error(ErrorKind::semantic, "model has no lattice '" + o.lattice + "'");
      } else if (!o.network.empty() || !model.networks.empty()) {
        const auto* n = o.network.empty() ? &model.networks.front() : model.find_network(o.network);
        if (!n) throw Error(ErrorKind::semantic, "model has no network '" + o.network + "'");
        decl = model.find_lattice(n->lattice);
      } else if (!model.lattices.empty()) {
        decl = &model.lattices.front();
      } else {
        throw Error(ErrorKind::semantic, "model declares no lattice");
      }
      if (!decl->lattice) throw LatticeError(decl->error->kind(), decl->error->what(), decl->error->witness());
      out << io::hasse_dot(*decl->lattice, decl->name);
      return success;
    }
    const auto s = load_subject(o);
    const auto r = recover_subject(s, "monotone");
    if (!r.lattice) throw LatticeError(ErrorKind::not_a_lattice, "no lattice recovered: " + r.message);
    out << io::hasse_dot(*r.lattice, s.name);
    return success;
  }
  const auto s = load_subject(o);
  if (what == "comparability") {
    out << io::comparability_dot(recover_subject(s, "monotone").graph, s.labels, s.name);
  } else {
    guard(safe_mul(s.assr->num_states(), s.assr->num_inputs()), "the transition graph");
    out << io::transition_dot(*s.assr, s.labels, s.name);
  }
  return success;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::parse:
    case ErrorKind::semantic: return parse_error;
    case ErrorKind::dimension:
    case ErrorKind::invalid_argument:
    case ErrorKind::state_space_cap: return data_error;
    default: return property_fails;
  }
}

}  // namespace

std::size_t max_columns() {
  if (const char* env = std::getenv("LATNET_MAX_COLUMNS")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return default_max_columns;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Control networks over finite lattices", "latnet"};
  app.require_subcommand(1);
  Options o;
  std::string from, to, mode = "paper", recover_mode = "monotone", x0, inputs, what = "hasse";
  std::optional<std::size_t> steps;
  std::size_t k1 = 0;

  auto model_arg = [&](CLI::App* sub) { sub->add_option("model", o.model, "model file (.lcn) or matrix JSON")->required(); };
  auto network_opt = [&](CLI::App* sub) { sub->add_option("--network", o.network, "network to use"); };

  auto* check = app.add_subcommand("check-lattice", "verify lattice declarations");
  model_arg(check);
  check->add_option("--lattice", o.lattice, "lattice to check (default: all)");

  auto* comp = app.add_subcommand("compile", "algebraic state space representation");
  model_arg(comp);
  network_opt(comp);

  auto* ctrl = app.add_subcommand("controllability", "controllability matrix and reachability queries");
  model_arg(ctrl);
  network_opt(ctrl);
  ctrl->add_option("--from", from, "source state, e.g. P1,P2");
  ctrl->add_option("--to", to, "target state");

  auto* obs = app.add_subcommand("observability", "distinguishable pairs via the pair system");
  model_arg(obs);
  network_opt(obs);
  obs->add_option("--mode", mode, "paper: reach differing outputs in >= 1 steps; standard: also count t = 0")
      ->check(CLI::IsMember({"paper", "standard"}));

  auto* fac = app.add_subcommand("factor", "split a network over a product lattice");
  model_arg(fac);
  network_opt(fac);
  fac->add_option("--k1", k1, "size of the first factor lattice");
  fac->add_option("--mode", mode, "distinguishability mode")->check(CLI::IsMember({"paper", "standard"}));

  auto* rec = app.add_subcommand("recover", "recover a lattice order from a network");
  model_arg(rec);
  network_opt(rec);
  rec->add_option("--mode", recover_mode, "pair test")->check(CLI::IsMember({"monotone", "comparable"}));

  auto* sim = app.add_subcommand("simulate", "run a trajectory");
  model_arg(sim);
  network_opt(sim);
  sim->add_option("--x0", x0, "initial state, e.g. P1,P4")->required();
  sim->add_option("--inputs", inputs, "inputs separated by ';'");
  sim->add_option("--steps", steps, "number of steps");

  auto* ren = app.add_subcommand("render", "DOT output");
  model_arg(ren);
  network_opt(ren);
  ren->add_option("--lattice", o.lattice, "lattice for --what hasse");
  ren->add_option("--what", what, "graph to draw")->check(CLI::IsMember({"hasse", "comparability", "transitions"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? success : parse_error;
  }

  try {
    if (check->parsed()) return check_lattice(o, out);
    if (comp->parsed()) return compile(o, out);
    if (ctrl->parsed()) return controllability(o, from, to, out);
    if (obs->parsed()) return observability(o, mode, out);
    if (fac->parsed()) return factor(o, k1, mode, out);
    if (rec->parsed()) return recover(o, recover_mode, out);
    if (sim->parsed()) return simulate_cmd(o, x0, inputs, steps, out);
    if (ren->parsed()) return render(o, what, out);
  } catch (const dsl::ModelError& e) {
    err << o.model << ":" << e.pos().line << ":" << e.pos().column << ": error: " << e.message() << "\n";
    return parse_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return data_error;
  }
  return parse_error;
}

}  // namespace latnet::cli
