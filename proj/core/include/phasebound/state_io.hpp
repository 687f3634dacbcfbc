#pragma once

#include <filesystem>
#include <string>

#include "phasebound/state.hpp"

namespace phasebound {

/// JSON schema for states on disk:
///   {"lo": int, "hi": int, "amplitudes": [[re, im], ...]}
/// Serialization is lossless for doubles. Loading validates the schema and
/// normalization (tolerance 1e-9), then renormalizes exactly.
std::string state_to_json(const StateVector& state);
StateVector state_from_json(const std::string& text);

void save_state_json(const StateVector& state, const std::filesystem::path& path);
StateVector load_state_json(const std::filesystem::path& path);

}  // namespace phasebound
