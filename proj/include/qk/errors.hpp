#pragma once

#include <stdexcept>
#include <string>

namespace qk {

// Common base so callers (and the CLI exit-code map) can treat library
// failures uniformly.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LoopEdgeError : Error {
  int v;
  explicit LoopEdgeError(int v_)
      : Error("loop edge at vertex " + std::to_string(v_)), v(v_) {}
};

struct VertexOutOfRangeError : Error {
  int v;
  int n;
  VertexOutOfRangeError(int v_, int n_)
      : Error("vertex " + std::to_string(v_) + " out of range for order " +
              std::to_string(n_)),
        v(v_),
        n(n_) {}
};

struct NotSourcelessError : Error {
  int source;
  explicit NotSourcelessError(int s)
      : Error("digraph has a source: vertex " + std::to_string(s)), source(s) {}
};

// Exact searches refuse to run past their configured caps.
struct BudgetExceededError : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& msg)
      : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct ClassViolationError : Error {
  using Error::Error;
};

// Generator failures.
struct BadResidueSetError : Error {
  using Error::Error;
};
struct IneligibleTournamentError : Error {
  using Error::Error;
};
struct InfeasibleParamsError : Error {
  using Error::Error;
};
struct GenerationFailedError : Error {
  using Error::Error;
};

}  // namespace qk
