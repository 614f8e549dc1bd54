#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace latnet {

enum class ErrorKind {
  dimension,
  invalid_argument,
  not_a_lattice,
  not_a_poset,
  not_closed,
  not_invariant,
  not_monotone,
  not_decomposable,
  parse,
  semantic,
  state_space_cap,
};

/// Base class for every error raised by the library.
///
/// `witness` carries the offending element/state indices (0-based) when the
/// failure has a concrete counterexample.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::vector<std::size_t> witness = {})
      : std::runtime_error(what), kind_(kind), witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> witness_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(ErrorKind::dimension, what) {}
};

}  // namespace latnet
