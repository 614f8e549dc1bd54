#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latnet/error.hpp"
#include "latnet/lattice.hpp"
#include "latnet/network.hpp"

namespace latnet::dsl {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Syntax or semantic error in a model file, with a 1-based position.
class ModelError : public Error {
 public:
  ModelError(ErrorKind kind, SourcePos pos, const std::string& message)
      : Error(kind, message), pos_(pos), message_(message) {}
  SourcePos pos() const noexcept { return pos_; }
  const std::string& message() const noexcept { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

enum class LatticeForm { join, order, covers, chain, product, sublattice };

/// A lattice declaration as written, plus the lattice it denotes. A
/// declaration that does not denote a lattice keeps the construction error so
/// that `check-lattice` can report it; using it anywhere else is an error.
struct LatticeDecl {
  std::string name;
  SourcePos pos;
  LatticeForm form = LatticeForm::chain;
  /// join, order, covers, sublattice: element labels as written.
  std::vector<std::string> labels;
  /// join: 1-based column indices of the join table.
  std::vector<std::size_t> table;
  /// order, covers: pairs a < b by label.
  std::vector<std::pair<std::string, std::string>> relations;
  /// chain: size.
  std::size_t size = 0;
  /// product: operand names; sublattice: the parent in `operands[0]`.
  std::vector<std::string> operands;

  std::optional<FiniteLattice> lattice;
  std::optional<Error> error;
};

struct NetworkDecl {
  std::string name;
  SourcePos pos;
  std::string lattice;
  std::vector<std::string> states;
  std::vector<std::string> inputs;
  std::vector<std::string> output_names;
  /// Elaborated network; updates follow the order of `states`.
  NetworkDef def;
};

struct ModelFile {
  std::vector<LatticeDecl> lattices;
  std::vector<NetworkDecl> networks;

  const LatticeDecl* find_lattice(const std::string& name) const;
  const NetworkDecl* find_network(const std::string& name) const;
};

/// Parses and elaborates a model. Throws ModelError.
ModelFile parse_model(const std::string& text);

/// Canonical text of a model; parsing it yields the same model.
std::string print_model(const ModelFile& model);

/// `label` as written in a model: bare when it is a word, quoted otherwise.
std::string quote_label(const std::string& label);

/// Expression in model syntax, with quoted labels.
std::string print_expr(const LatticeExpr& e, const FiniteLattice& lattice, const std::vector<std::string>& states,
                       const std::vector<std::string>& inputs);

}  // namespace latnet::dsl
