#pragma once

#include <stdexcept>
#include <string>

namespace qcon {

// Error vocabulary used across the library.  All conditions that a caller can
// trigger through bad inputs throw invalid_argument; the others mark distinct
// failure classes so callers (and the CLI) can map them to exit codes.

struct invalid_argument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A structurally valid input outside the domain of the operation
// (e.g. asking for the SLEM of a disconnected graph).
struct degenerate_input : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Physical-validity preconditions (e.g. weights that do not describe a
// completely positive update).
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Guard rails against requests that would exhaust memory or time.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct not_implemented : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace qcon
