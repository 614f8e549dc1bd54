#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "latnet/dsl.hpp"
#include "support.hpp"

using namespace latnet;
using namespace fixture;
using dsl::ModelError;
using dsl::parse_model;
using dsl::print_model;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::filesystem::path> model_corpus() {
  std::vector<std::filesystem::path> out;
  for (const char* dir : {LATNET_SOURCE_DIR "/tests/corpus", LATNET_SOURCE_DIR "/models"})
    for (const auto& e : std::filesystem::directory_iterator(dir))
      if (e.path().extension() == ".lcn") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

struct Failure {
  ErrorKind kind;
  std::size_t line, column;
  std::string message;
};

Failure failure_of(const std::string& text) {
  try {
    parse_model(text);
  } catch (const ModelError& e) {
    return {e.kind(), e.pos().line, e.pos().column, e.message()};
  }
  FAIL("model was accepted: " << text);
  return {};
}

// Lattice declaration that reproduces `l` exactly, labels included.
std::string join_decl(const std::string& name, const FiniteLattice& l) {
  std::string out = "lattice " + name + " = join [";
  for (std::size_t i = 0; i < l.size(); ++i) out += (i ? ", " : "") + dsl::quote_label(l.label(i));
  out += "] delta[";
  const auto j = l.join_matrix();
  for (std::size_t c = 0; c < j.cols(); ++c) out += (c ? ", " : "") + std::to_string(j[c] + 1);
  return out + "]\n";
}

const char* example1_text = R"(
lattice Diamond = join [P1, P2, P3, P4] delta[1, 1, 1, 1, 1, 2, 1, 2, 1, 1, 3, 3, 1, 2, 3, 4]
network Example1 over Diamond {
  states x1, x2;
  inputs u;
  x1' = x1 /\ (x2 \/ u);
  x2' = x1 \/ (x2 /\ u);
}
)";

}  // namespace

TEST_CASE("diamond network in the DSL assembles to the printed Example 1 matrix") {
  const auto model = parse_model(example1_text);
  REQUIRE(model.networks.size() == 1);
  const auto a = assemble(model.networks[0].def);
  CHECK(a.M == delta(16, ex1_M));
  CHECK(a.components[0] == delta(4, ex1_M1));
  CHECK(a.components[1] == delta(4, ex1_M2));
  CHECK(model.networks[0].def.updates == example1().updates);
}

TEST_CASE("chain declaration") {
  const auto model = parse_model("lattice C2 = chain 2");
  REQUIRE(model.lattices.size() == 1);
  REQUIRE(model.lattices[0].lattice);
  CHECK(model.lattices[0].lattice->join_matrix() == delta(2, {1, 1, 1, 2}));
  CHECK(model.lattices[0].lattice->labels() == std::vector<std::string>{"1", "0"});
}

TEST_CASE("unknown variable is reported at its position") {
  const auto f = failure_of("lattice C2 = chain 2\nnetwork N over C2 {\n  states x1, x2;\n  x1' = x1 \\/ x9;\n  x2' = x1;\n}\n");
  CHECK(f.kind == ErrorKind::semantic);
  CHECK(f.line == 4);
  CHECK(f.column == 15);
  CHECK(f.message == "unknown variable 'x9'");
}

TEST_CASE("syntax and semantic errors carry positions") {
  struct Case {
    std::string text;
    ErrorKind kind;
    std::size_t line, column;
    std::string fragment;
  };
  const std::vector<Case> cases = {
      {"lattice C2 = chain", ErrorKind::parse, 1, 19, "chain length"},
      {"lattice C2 = ring 2", ErrorKind::parse, 1, 14, "unknown lattice form"},
      {"lattice C2 = chain 0", ErrorKind::semantic, 1, 20, "at least one element"},
      {"lattice C2 = chain 2\nlattice C2 = chain 3", ErrorKind::semantic, 2, 9, "already declared"},
      {"lattice P = product A B", ErrorKind::semantic, 1, 21, "unknown lattice 'A'"},
      {"lattice D = join delta[1, 1, 1]", ErrorKind::semantic, 1, 23, "not the square"},
      {"lattice D = join delta[1, 1, 1, 3]", ErrorKind::semantic, 1, 33, "outside 1..2"},
      {"lattice D = join [a, b, c] delta[1, 1, 1, 2]", ErrorKind::semantic, 1, 19, "3 labels"},
      {"lattice D = order [a, a] { a < a }", ErrorKind::semantic, 1, 23, "duplicate element label"},
      {"lattice D = order [a, b] { a < c }", ErrorKind::semantic, 1, 32, "invalid element label 'c'"},
      {"lattice D = order [a, b] { a b }", ErrorKind::parse, 1, 30, "expected '<'"},
      {"network N over L {\n  states x;\n  x' = x;\n}", ErrorKind::semantic, 1, 16, "unknown lattice 'L'"},
      {"lattice C2 = chain 2\nnetwork N over C2 {\n  states x;\n}", ErrorKind::semantic, 4, 1, "state 'x' has no update"},
      {"lattice C2 = chain 2\nnetwork N over C2 {\n  states x;\n  x' = x;\n  x' = x;\n}", ErrorKind::semantic, 5,
       3, "updated twice"},
      {"lattice C2 = chain 2\nnetwork N over C2 {\n  states x;\n  inputs u;\n  x' = x;\n  output y = u;\n}",
       ErrorKind::semantic, 6, 14, "input"},
      {"lattice C2 = chain 2\nnetwork N over C2 {\n  states x;\n  x' = const 7;\n}", ErrorKind::semantic, 4, 14,
       "invalid element label '7'"},
      {"lattice C2 = chain 2\nnetwork N over C2 {\n  states x;\n  x' = m[1](x);\n}", ErrorKind::parse, 4, 11,
       "expected ','"},
      {"lattice C2 = chain 2\nnetwork N over C2 {\n  states x;\n  x' = (x \\/ x;\n}", ErrorKind::parse, 4, 15,
       "expected ')'"},
      {"lattice C2 = chain 2\nnetwork N over C2 {\n  states x, x;\n  x' = x;\n}", ErrorKind::semantic, 3, 13,
       "name 'x' is already declared"},
      {"lattice C2 = chain 2\nnetwork N over C2 {\n  states x;\n  x' = x;\n}\nnetwork N over C2 {\n  states "
       "x;\n  x' = x;\n}",
       ErrorKind::semantic, 6, 9, "already declared"},
      {"lattice Q = order [\"a\", \"b] { }", ErrorKind::parse, 1, 25, "unterminated string"},
      {"lattice C2 = chain 2 $", ErrorKind::parse, 1, 22, "unexpected character"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    const auto f = failure_of(c.text);
    CHECK(f.kind == c.kind);
    CHECK(f.line == c.line);
    CHECK(f.column == c.column);
    CHECK_MESSAGE(f.message.find(c.fragment) != std::string::npos, f.message);
  }
}

TEST_CASE("columns count code points, not bytes") {
  const auto f = failure_of("lattice U = order [\"α\", \"β\"] { \"α\" < γ }");
  CHECK(f.line == 1);
  CHECK(f.column == 38);
}

TEST_CASE("a declaration that is not a lattice is kept for checking but cannot be used") {
  const std::string bad = "lattice D = order [a, b, c] { a < b, a < c }\n";
  const auto model = parse_model(bad);
  REQUIRE(model.lattices.size() == 1);
  CHECK_FALSE(model.lattices[0].lattice);
  REQUIRE(model.lattices[0].error);
  CHECK(model.lattices[0].error->kind() == ErrorKind::not_a_lattice);

  const auto f = failure_of(bad + "network N over D {\n  states x;\n  x' = x;\n}\n");
  CHECK(f.kind == ErrorKind::semantic);
  CHECK(f.line == 2);
  CHECK(f.message.find("'D' is not a lattice") == 0);
}

TEST_CASE("sublattice that is not closed is reported") {
  const auto model = parse_model(join_decl("Diamond", diamond()) + "lattice S = sublattice Diamond [P2, P3]\n");
  REQUIRE(model.lattices[1].error);
  CHECK(model.lattices[1].error->kind() == ErrorKind::not_closed);
}

TEST_CASE("parse, print, parse is idempotent over the model corpus") {
  const auto files = model_corpus();
  REQUIRE(files.size() >= 20);
  for (const auto& path : files) {
    CAPTURE(path.string());
    const auto first = parse_model(slurp(path));
    const auto printed = print_model(first);
    const auto second = parse_model(printed);
    CHECK(print_model(second) == printed);
    REQUIRE(first.lattices.size() == second.lattices.size());
    for (std::size_t i = 0; i < first.lattices.size(); ++i) {
      CHECK(first.lattices[i].name == second.lattices[i].name);
      CHECK(first.lattices[i].lattice.has_value() == second.lattices[i].lattice.has_value());
      if (first.lattices[i].lattice) {
        CHECK(first.lattices[i].lattice->join_matrix() == second.lattices[i].lattice->join_matrix());
        CHECK(first.lattices[i].lattice->labels() == second.lattices[i].lattice->labels());
      }
    }
    REQUIRE(first.networks.size() == second.networks.size());
    for (std::size_t i = 0; i < first.networks.size(); ++i) {
      const auto& a = first.networks[i];
      const auto& b = second.networks[i];
      CHECK(a.states == b.states);
      CHECK(a.inputs == b.inputs);
      CHECK(a.output_names == b.output_names);
      CHECK(a.def.updates == b.def.updates);
      CHECK(a.def.outputs == b.def.outputs);
      const auto ma = assemble(a.def), mb = assemble(b.def);
      CHECK(ma.M == mb.M);
      CHECK(ma.E == mb.E);
    }
  }
}

TEST_CASE("random expressions survive printing and parsing") {
  for (const auto& l : lattice_corpus()) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = uniform(1, 3), m = uniform(0, 2);
      std::vector<std::string> xs, us;
      for (std::size_t i = 0; i < n; ++i) xs.push_back("x" + std::to_string(i + 1));
      for (std::size_t i = 0; i < m; ++i) us.push_back("u" + std::to_string(i + 1));
      std::vector<LatticeExpr> updates;
      std::string text = join_decl("L", l) + "network N over L {\n  states ";
      for (std::size_t i = 0; i < n; ++i) text += (i ? ", " : "") + xs[i];
      text += ";\n";
      if (m) {
        text += "  inputs ";
        for (std::size_t i = 0; i < m; ++i) text += (i ? ", " : "") + us[i];
        text += ";\n";
      }
      for (std::size_t i = 0; i < n; ++i) {
        updates.push_back(random_expr(l, n, m, 4));
        text += "  " + xs[i] + "' = " + dsl::print_expr(updates.back(), l, xs, us) + ";\n";
      }
      text += "}\n";
      CAPTURE(text);
      const auto model = parse_model(text);
      CHECK(model.networks.at(0).def.updates == updates);
    }
  }
}

TEST_CASE("labels are quoted only when needed") {
  CHECK(dsl::quote_label("P1") == "P1");
  CHECK(dsl::quote_label("0") == "0");
  CHECK(dsl::quote_label("(0,1)") == "\"(0,1)\"");
  CHECK(dsl::quote_label("a \"b\"") == "\"a \\\"b\\\"\"");
  CHECK(dsl::quote_label("") == "\"\"");
}

TEST_CASE("product labels are usable as constants once quoted") {
  const auto model = parse_model(
      "lattice B = chain 2\nlattice B2 = product B B\nnetwork N over B2 {\n  states x;\n  x' = x \\/ const \"(1,0)\";\n}\n");
  const auto& l = model.networks[0].def.lattice;
  const auto a = assemble(model.networks[0].def);
  const std::size_t c = l.find("(1,0)").value();
  for (std::size_t x = 0; x < l.size(); ++x) CHECK(a.M[x] == l.join(x, c));
}
