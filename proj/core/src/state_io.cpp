#include "phasebound/state_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "phasebound/util.hpp"

namespace phasebound {

using nlohmann::json;

std::string state_to_json(const StateVector& state) {
  json out;
  out["lo"] = state.lo();
  out["hi"] = state.hi();
  json amps = json::array();
  for (const Complex& z : state.amplitudes()) {
    amps.push_back(json::array({z.real(), z.imag()}));
  }
  out["amplitudes"] = std::move(amps);
  return out.dump(2);
}

StateVector state_from_json(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!in.is_object() || !in.contains("lo") || !in.contains("hi") ||
      !in.contains("amplitudes") || !in["amplitudes"].is_array()) {
    throw std::invalid_argument("state file must be {lo, hi, amplitudes: [[re, im], ...]}");
  }
  const int lo = in["lo"].get<int>();
  const int hi = in["hi"].get<int>();
  std::vector<Complex> amplitudes;
  amplitudes.reserve(in["amplitudes"].size());
  for (const json& cell : in["amplitudes"]) {
    if (!cell.is_array() || cell.size() != 2) {
      throw std::invalid_argument("amplitudes must be [re, im] pairs");
    }
    amplitudes.emplace_back(cell[0].get<double>(), cell[1].get<double>());
  }
  if (static_cast<int>(amplitudes.size()) != hi - lo + 1) {
    throw std::invalid_argument("amplitude count does not match the index range");
  }
  KahanSum n2;
  for (const Complex& z : amplitudes) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("state amplitudes must be finite");
    }
    n2.add(std::norm(z));
  }
  if (std::abs(n2.value() - 1.0) > 1e-9) {
    throw std::invalid_argument("state in file is not normalized (tolerance 1e-9)");
  }
  return StateVector::normalized(lo, hi, std::move(amplitudes));
}

void save_state_json(const StateVector& state, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot open state file for writing: " + path.string());
  }
  out << state_to_json(state) << '\n';
}

StateVector load_state_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open state file: " + path.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return state_from_json(text);
}

}  // namespace phasebound
