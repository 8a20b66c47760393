#pragma once

#include <stdexcept>
#include <string>

namespace bredon {

/// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed user input: group expressions, profile documents, catalogs, CLI values.
struct input_error : error {
  using error::error;
};

/// Parse failure with a source location.
struct parse_error : input_error {
  parse_error(std::string msg, int line, int column)
      : input_error("parse error at line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// A declared invariant does not hold (profile regularity, catalog shape, ...).
struct invariant_error : input_error {
  using input_error::input_error;
};

/// Query outside the declared q-range of a K-theory profile.
struct range_error : error {
  using error::error;
};

/// Operation cannot represent its result (symbolic ranks in exact matrix
/// computations, products of symbolic ranks, ...).
struct unsupported_error : error {
  using error::error;
};

}  // namespace bredon
