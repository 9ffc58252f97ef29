#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "sepcone/states.hpp"

namespace sepcone {

// Malformed content: bad syntax, wrong schema, violated state invariants.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem trouble: missing file, unreadable path, failed write.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using AnyState = std::variant<PureState, MixedState>;

// State files are JSON: {"dims": [...], "kind": "pure"|"mixed",
// "data": [[re, im], ...] or row-major [[[re, im], ...], ...],
// "metadata": {...}}. Parsed states must satisfy the state invariants.
AnyState read_state_file(const std::string& path);

void write_state_file(const std::string& path, const PureState& state);
void write_state_file(const std::string& path, const MixedState& state);

}  // namespace sepcone
