#include "latnet/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <set>

namespace latnet::dsl {

namespace {

enum class Tok { word, number, string, punct, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  SourcePos pos;
};

[[noreturn]] void syntax_error(SourcePos pos, const std::string& msg) { throw ModelError(ErrorKind::parse, pos, msg); }
[[noreturn]] void semantic_error(SourcePos pos, const std::string& msg) {
  throw ModelError(ErrorKind::semantic, pos, msg);
}

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end: return "end of input";
    case Tok::string: return "string \"" + t.text + "\"";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t j = 0; j < count && i < text.size(); ++j, ++i) {
      const auto c = static_cast<unsigned char>(text[i]);
      if (c == '\n') {
        ++pos.line;
        pos.column = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++pos.column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const SourcePos start = pos;
    if (word_char(c)) {
      std::size_t j = i;
      while (j < text.size() && word_char(text[j])) ++j;
      const std::string w = text.substr(i, j - i);
      const bool digits = std::all_of(w.begin(), w.end(), [](char d) { return std::isdigit(static_cast<unsigned char>(d)); });
      out.push_back({digits ? Tok::number : Tok::word, w, start});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::string s;
      advance(1);
      while (true) {
        if (i >= text.size() || text[i] == '\n') syntax_error(start, "unterminated string");
        if (text[i] == '"') break;
        if (text[i] == '\\') {
          advance(1);
          if (i >= text.size() || (text[i] != '"' && text[i] != '\\')) syntax_error(pos, "unknown escape in string");
        }
        s += text[i];
        advance(1);
      }
      advance(1);
      out.push_back({Tok::string, s, start});
      continue;
    }
    if ((c == '\\' || c == '/') && i + 1 < text.size() && text[i + 1] == (c == '\\' ? '/' : '\\')) {
      out.push_back({Tok::punct, text.substr(i, 2), start});
      advance(2);
      continue;
    }
    if (std::string("=[](){},;<'").find(c) != std::string::npos) {
      out.push_back({Tok::punct, std::string(1, c), start});
      advance(1);
      continue;
    }
    syntax_error(start, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::end, "", pos});
  return out;
}

// Expression tree with positions, resolved once the network header is known.
struct ExprAst {
  enum Kind { name, constant, join, meet, mab } kind = name;
  SourcePos pos;
  std::string text;  // name, or the const label / the `a` label of mab
  std::string value;  // the `b` label of mab
  SourcePos value_pos;
  std::unique_ptr<ExprAst> left, right;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  ModelFile parse() {
    ModelFile model;
    while (peek().kind != Tok::end) {
      if (is_word("lattice"))
        lattice_decl(model);
      else if (is_word("network"))
        network_decl(model);
      else
        syntax_error(peek().pos, "expected 'lattice' or 'network', found " + describe(peek()));
    }
    return model;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool is_word(const char* w, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::word && peek(ahead).text == w;
  }
  bool is_punct(const char* p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::punct && peek(ahead).text == p;
  }
  const Token& expect_punct(const char* p, const char* context) {
    if (!is_punct(p)) syntax_error(peek().pos, std::string("expected '") + p + "' " + context + ", found " + describe(peek()));
    return next();
  }
  void expect_word(const char* w, const char* context) {
    if (!is_word(w)) syntax_error(peek().pos, std::string("expected '") + w + "' " + context + ", found " + describe(peek()));
    next();
  }
  const Token& name(const char* what) {
    if (peek().kind != Tok::word) syntax_error(peek().pos, std::string("expected ") + what + ", found " + describe(peek()));
    return next();
  }
  std::size_t number(const char* what) {
    if (peek().kind != Tok::number) syntax_error(peek().pos, std::string("expected ") + what + ", found " + describe(peek()));
    const Token& t = next();
    if (t.text.size() > 9) semantic_error(t.pos, std::string(what) + " is too large");
    return std::stoul(t.text);
  }
  const Token& label() {
    const auto k = peek().kind;
    if (k != Tok::word && k != Tok::number && k != Tok::string)
      syntax_error(peek().pos, "expected an element label, found " + describe(peek()));
    return next();
  }
  std::vector<Token> label_list() {
    std::vector<Token> out;
    expect_punct("[", "to open a label list");
    if (!is_punct("]")) {
      out.push_back(label());
      while (is_punct(",")) {
        next();
        out.push_back(label());
      }
    }
    expect_punct("]", "to close a label list");
    return out;
  }

  const LatticeDecl& lattice_ref(const ModelFile& model, const Token& t) {
    const auto* decl = model.find_lattice(t.text);
    if (!decl) semantic_error(t.pos, "unknown lattice '" + t.text + "'");
    return *decl;
  }
  const FiniteLattice& usable(const LatticeDecl& decl, SourcePos at) {
    if (!decl.lattice) semantic_error(at, "'" + decl.name + "' is not a lattice: " + decl.error->what());
    return *decl.lattice;
  }

  static std::vector<std::string> texts(const std::vector<Token>& ts) {
    std::vector<std::string> out;
    for (const auto& t : ts) out.push_back(t.text);
    return out;
  }

  static void check_distinct(const std::vector<Token>& labels) {
    std::set<std::string> seen;
    for (const auto& t : labels)
      if (!seen.insert(t.text).second) semantic_error(t.pos, "duplicate element label '" + t.text + "'");
  }

  static std::size_t index_of(const std::vector<std::string>& labels, const Token& t) {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == t.text) return i;
    semantic_error(t.pos, "invalid element label '" + t.text + "'");
  }

  // Runs a lattice constructor, keeping a lattice-level failure on the decl.
  template <class F>
  static void build(LatticeDecl& decl, F&& make) {
    try {
      decl.lattice = make();
    } catch (const ModelError&) {
      throw;
    } catch (const Error& e) {
      decl.error = e;
    }
  }

  void lattice_decl(ModelFile& model) {
    next();
    LatticeDecl decl;
    const Token& n = name("a lattice name");
    decl.name = n.text;
    decl.pos = n.pos;
    if (model.find_lattice(decl.name)) semantic_error(n.pos, "lattice '" + decl.name + "' is already declared");
    expect_punct("=", "after the lattice name");
    const Token& form = name("a lattice form");
    if (form.text == "chain") {
      decl.form = LatticeForm::chain;
      const SourcePos at = peek().pos;
      decl.size = number("the chain length");
      if (decl.size == 0) semantic_error(at, "a chain needs at least one element");
      build(decl, [&] { return chain(decl.size); });
    } else if (form.text == "product") {
      decl.form = LatticeForm::product;
      const Token& a = name("a lattice name");
      const Token& b = name("a lattice name");
      decl.operands = {a.text, b.text};
      const auto& l1 = usable(lattice_ref(model, a), a.pos);
      const auto& l2 = usable(lattice_ref(model, b), b.pos);
      build(decl, [&] { return product(l1, l2); });
    } else if (form.text == "join") {
      decl.form = LatticeForm::join;
      std::vector<Token> labels;
      if (is_punct("[")) labels = label_list();
      check_distinct(labels);
      expect_word("delta", "before the join table");
      const SourcePos table_pos = peek().pos;
      expect_punct("[", "to open the join table");
      std::vector<SourcePos> where;
      while (!is_punct("]")) {
        if (!decl.table.empty()) expect_punct(",", "between table entries");
        where.push_back(peek().pos);
        decl.table.push_back(number("a 1-based element index"));
      }
      next();
      std::size_t k = 0;
      while (k * k < decl.table.size()) ++k;
      if (k == 0 || k * k != decl.table.size())
        semantic_error(table_pos, "join table has " + std::to_string(decl.table.size()) +
                                      " entries, which is not the square of an element count");
      if (!labels.empty() && labels.size() != k)
        semantic_error(labels.front().pos, "join table has " + std::to_string(k) + " elements but " +
                                               std::to_string(labels.size()) + " labels are given");
      for (std::size_t i = 0; i < decl.table.size(); ++i)
        if (decl.table[i] == 0 || decl.table[i] > k)
          semantic_error(where[i], "join table entry " + std::to_string(decl.table[i]) + " is outside 1.." +
                                       std::to_string(k));
      decl.labels = texts(labels);
      build(decl, [&] { return lattice_from_join(LogicalMatrix::delta(k, decl.table), decl.labels); });
    } else if (form.text == "order" || form.text == "covers") {
      decl.form = form.text == "order" ? LatticeForm::order : LatticeForm::covers;
      const auto labels = label_list();
      if (labels.empty()) semantic_error(form.pos, "a lattice needs at least one element");
      check_distinct(labels);
      decl.labels = texts(labels);
      expect_punct("{", "to open the relation list");
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      while (!is_punct("}")) {
        if (!decl.relations.empty()) expect_punct(",", "between relations");
        Token lo = label();
        do {
          expect_punct("<", "in a relation");
          const Token& hi = label();
          pairs.emplace_back(index_of(decl.labels, lo), index_of(decl.labels, hi));
          decl.relations.emplace_back(lo.text, hi.text);
          lo = hi;
        } while (is_punct("<"));
      }
      next();
      const std::size_t k = labels.size();
      if (decl.form == LatticeForm::covers) {
        build(decl, [&] { return lattice_from_covers(k, pairs, decl.labels); });
      } else {
        build(decl, [&] {
          Relation rel(k * k, false);
          for (std::size_t a = 0; a < k; ++a) rel[a * k + a] = true;
          for (auto [a, b] : pairs) rel[a * k + b] = true;
          transitive_closure(rel, k);
          return lattice_from_order(rel, decl.labels);
        });
      }
    } else if (form.text == "sublattice") {
      decl.form = LatticeForm::sublattice;
      const Token& parent = name("a lattice name");
      decl.operands = {parent.text};
      const auto& l = usable(lattice_ref(model, parent), parent.pos);
      const auto labels = label_list();
      if (labels.empty()) semantic_error(parent.pos, "a sublattice needs at least one element");
      check_distinct(labels);
      decl.labels = texts(labels);
      std::vector<std::size_t> subset;
      for (const auto& t : labels) subset.push_back(index_of(l.labels(), t));
      build(decl, [&] { return sublattice(l, subset); });
    } else {
      syntax_error(form.pos, "unknown lattice form '" + form.text +
                                 "' (expected chain, product, join, order, covers or sublattice)");
    }
    model.lattices.push_back(std::move(decl));
  }

  std::unique_ptr<ExprAst> expr() {
    auto lhs = term();
    while (is_punct("\\/")) {
      auto node = std::make_unique<ExprAst>();
      node->kind = ExprAst::join;
      node->pos = next().pos;
      node->left = std::move(lhs);
      node->right = term();
      lhs = std::move(node);
    }
    return lhs;
  }
  std::unique_ptr<ExprAst> term() {
    auto lhs = factor();
    while (is_punct("/\\")) {
      auto node = std::make_unique<ExprAst>();
      node->kind = ExprAst::meet;
      node->pos = next().pos;
      node->left = std::move(lhs);
      node->right = factor();
      lhs = std::move(node);
    }
    return lhs;
  }
  std::unique_ptr<ExprAst> factor() {
    auto node = std::make_unique<ExprAst>();
    node->pos = peek().pos;
    if (is_punct("(")) {
      next();
      node = expr();
      expect_punct(")", "to close the parenthesis");
      return node;
    }
    if (is_word("const") && peek(1).kind != Tok::punct) {
      next();
      node->kind = ExprAst::constant;
      const Token& c = label();
      node->text = c.text;
      node->pos = c.pos;
      return node;
    }
    if (is_word("m") && is_punct("[", 1)) {
      next();
      next();
      node->kind = ExprAst::mab;
      const Token& a = label();
      node->text = a.text;
      expect_punct(",", "between the m[a,b] parameters");
      const Token& b = label();
      node->value = b.text;
      node->value_pos = b.pos;
      expect_punct("]", "after the m[a,b] parameters");
      expect_punct("(", "before the m[a,b] argument");
      node->left = expr();
      expect_punct(")", "after the m[a,b] argument");
      return node;
    }
    if (peek().kind != Tok::word) syntax_error(peek().pos, "expected an expression, found " + describe(peek()));
    node->kind = ExprAst::name;
    node->text = next().text;
    return node;
  }

  struct Scope {
    const FiniteLattice& lattice;
    const std::vector<std::string>& states;
    const std::vector<std::string>& inputs;
    bool allow_inputs;
  };

  static std::size_t element(const Scope& s, const std::string& text, SourcePos pos) {
    if (auto i = s.lattice.find(text)) return *i;
    semantic_error(pos, "invalid element label '" + text + "'");
  }

  static LatticeExpr resolve(const ExprAst& e, const Scope& s) {
    switch (e.kind) {
      case ExprAst::name: {
        for (std::size_t i = 0; i < s.states.size(); ++i)
          if (s.states[i] == e.text) return LatticeExpr::var(i);
        for (std::size_t i = 0; i < s.inputs.size(); ++i)
          if (s.inputs[i] == e.text) {
            if (!s.allow_inputs) semantic_error(e.pos, "output expressions may not use input '" + e.text + "'");
            return LatticeExpr::input(i);
          }
        semantic_error(e.pos, "unknown variable '" + e.text + "'");
      }
      case ExprAst::constant: return LatticeExpr::constant(element(s, e.text, e.pos));
      case ExprAst::mab:
        return LatticeExpr::mab(element(s, e.text, e.pos), element(s, e.value, e.value_pos), resolve(*e.left, s));
      case ExprAst::join: return LatticeExpr::join(resolve(*e.left, s), resolve(*e.right, s));
      case ExprAst::meet: return LatticeExpr::meet(resolve(*e.left, s), resolve(*e.right, s));
    }
    semantic_error(e.pos, "malformed expression");
  }

  std::vector<Token> name_list(const char* what) {
    std::vector<Token> out{name(what)};
    while (is_punct(",")) {
      next();
      out.push_back(name(what));
    }
    expect_punct(";", "after the name list");
    return out;
  }

  void network_decl(ModelFile& model) {
    next();
    struct {
      std::string name, lattice;
      std::vector<std::string> states, inputs, output_names;
    } decl;
    const Token& n = name("a network name");
    decl.name = n.text;
    if (model.find_network(decl.name)) semantic_error(n.pos, "network '" + decl.name + "' is already declared");
    expect_word("over", "after the network name");
    const Token& lt = name("a lattice name");
    decl.lattice = lt.text;
    const FiniteLattice& lattice = usable(lattice_ref(model, lt), lt.pos);
    expect_punct("{", "to open the network body");

    std::optional<SourcePos> states_at, inputs_at;
    std::vector<std::pair<Token, std::unique_ptr<ExprAst>>> updates, outputs;
    std::set<std::string> names;
    auto declare = [&](const std::vector<Token>& ts, std::vector<std::string>& into) {
      for (const auto& t : ts) {
        if (!names.insert(t.text).second) semantic_error(t.pos, "name '" + t.text + "' is already declared");
        into.push_back(t.text);
      }
    };
    while (!is_punct("}")) {
      const bool update = peek().kind == Tok::word && is_punct("'", 1);
      if (!update && is_word("states")) {
        if (states_at) semantic_error(peek().pos, "states are already declared");
        states_at = next().pos;
        declare(name_list("a state name"), decl.states);
      } else if (!update && is_word("inputs")) {
        if (inputs_at) semantic_error(peek().pos, "inputs are already declared");
        inputs_at = next().pos;
        declare(name_list("an input name"), decl.inputs);
      } else if (!update && is_word("output")) {
        next();
        Token out = name("an output name");
        expect_punct("=", "after the output name");
        auto e = expr();
        expect_punct(";", "after the output expression");
        outputs.emplace_back(std::move(out), std::move(e));
      } else if (update) {
        Token target = next();
        next();
        expect_punct("=", "in an update");
        auto e = expr();
        expect_punct(";", "after the update expression");
        updates.emplace_back(std::move(target), std::move(e));
      } else {
        syntax_error(peek().pos, "expected 'states', 'inputs', 'output' or an update x' = ..., found " + describe(peek()));
      }
    }
    const SourcePos close = next().pos;
    if (!states_at) semantic_error(close, "network '" + decl.name + "' declares no states");

    NetworkDef def{lattice, decl.states.size(), decl.inputs.size(), {}, {}};
    std::vector<std::optional<LatticeExpr>> by_state(decl.states.size());
    const Scope scope{lattice, decl.states, decl.inputs, true};
    for (const auto& [target, e] : updates) {
      auto it = std::find(decl.states.begin(), decl.states.end(), target.text);
      if (it == decl.states.end()) semantic_error(target.pos, "update of unknown state '" + target.text + "'");
      auto& slot = by_state[static_cast<std::size_t>(it - decl.states.begin())];
      if (slot) semantic_error(target.pos, "state '" + target.text + "' is updated twice");
      slot = resolve(*e, scope);
    }
    for (std::size_t i = 0; i < by_state.size(); ++i) {
      if (!by_state[i]) semantic_error(close, "state '" + decl.states[i] + "' has no update");
      def.updates.push_back(*by_state[i]);
    }
    const Scope output_scope{lattice, decl.states, decl.inputs, false};
    std::set<std::string> output_names;
    for (const auto& [out, e] : outputs) {
      if (!output_names.insert(out.text).second || names.count(out.text))
        semantic_error(out.pos, "name '" + out.text + "' is already declared");
      decl.output_names.push_back(out.text);
      def.outputs.push_back(resolve(*e, output_scope));
    }
    model.networks.push_back(NetworkDecl{std::move(decl.name), n.pos, std::move(decl.lattice), std::move(decl.states),
                                         std::move(decl.inputs), std::move(decl.output_names), std::move(def)});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void render(const LatticeExpr& e, const FiniteLattice& l, const std::vector<std::string>& xs,
            const std::vector<std::string>& us, std::string& out, int parent_prec) {
  using K = LatticeExpr::Kind;
  switch (e.kind()) {
    case K::var: out += xs.at(e.index()); return;
    case K::input: out += us.at(e.index()); return;
    case K::constant: out += "const " + quote_label(l.label(e.index())); return;
    case K::mab:
      out += "m[" + quote_label(l.label(e.index())) + ", " + quote_label(l.label(e.value())) + "](";
      render(e.child(), l, xs, us, out, 0);
      out += ")";
      return;
    case K::join:
    case K::meet: {
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

std::string join_words(const std::vector<std::string>& ws, bool quote) {
  std::string out;
  for (std::size_t i = 0; i < ws.size(); ++i) out += (i ? ", " : "") + (quote ? quote_label(ws[i]) : ws[i]);
  return out;
}

}  // namespace

const LatticeDecl* ModelFile::find_lattice(const std::string& name) const {
  for (const auto& l : lattices)
    if (l.name == name) return &l;
  return nullptr;
}

const NetworkDecl* ModelFile::find_network(const std::string& name) const {
  for (const auto& n : networks)
    if (n.name == name) return &n;
  return nullptr;
}

ModelFile parse_model(const std::string& text) { return Parser(text).parse(); }

std::string quote_label(const std::string& label) {
  if (!label.empty() && std::all_of(label.begin(), label.end(), word_char)) return label;
  std::string out = "\"";
  for (char c : label) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string print_expr(const LatticeExpr& e, const FiniteLattice& lattice, const std::vector<std::string>& states,
                       const std::vector<std::string>& inputs) {
  std::string out;
  render(e, lattice, states, inputs, out, 0);
  return out;
}

std::string print_model(const ModelFile& model) {
  std::string out;
  for (const auto& l : model.lattices) {
    if (!out.empty()) out += "\n";
    out += "lattice " + l.name + " = ";
    switch (l.form) {
      case LatticeForm::chain: out += "chain " + std::to_string(l.size); break;
      case LatticeForm::product: out += "product " + l.operands[0] + " " + l.operands[1]; break;
      case LatticeForm::sublattice: out += "sublattice " + l.operands[0] + " [" + join_words(l.labels, true) + "]"; break;
      case LatticeForm::join: {
        out += "join ";
        if (!l.labels.empty()) out += "[" + join_words(l.labels, true) + "] ";
        out += "delta[";
        for (std::size_t i = 0; i < l.table.size(); ++i) out += (i ? ", " : "") + std::to_string(l.table[i]);
        out += "]";
        break;
      }
      case LatticeForm::order:
      case LatticeForm::covers: {
        out += l.form == LatticeForm::order ? "order [" : "covers [";
        out += join_words(l.labels, true) + "] {";
        for (std::size_t i = 0; i < l.relations.size(); ++i)
          out += (i ? ", " : " ") + quote_label(l.relations[i].first) + " < " + quote_label(l.relations[i].second);
        out += l.relations.empty() ? "}" : " }";
        break;
      }
    }
    out += "\n";
  }
  for (const auto& n : model.networks) {
    if (!out.empty()) out += "\n";
    out += "network " + n.name + " over " + n.lattice + " {\n";
    out += "  states " + join_words(n.states, false) + ";\n";
    if (!n.inputs.empty()) out += "  inputs " + join_words(n.inputs, false) + ";\n";
    for (std::size_t i = 0; i < n.states.size(); ++i)
      out += "  " + n.states[i] + "' = " + print_expr(n.def.updates[i], n.def.lattice, n.states, n.inputs) + ";\n";
    for (std::size_t i = 0; i < n.output_names.size(); ++i)
      out += "  output " + n.output_names[i] + " = " + print_expr(n.def.outputs[i], n.def.lattice, n.states, n.inputs) +
             ";\n";
    out += "}\n";
  }
  return out;
}

}  // namespace latnet::dsl
