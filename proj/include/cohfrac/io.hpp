#pragma once

#include <string>

#include <json.hpp>

#include "cohfrac/channels.hpp"
#include "cohfrac/qcore.hpp"

namespace cohfrac::io {

using json = nlohmann::json;

// State files: {"dim": d, "matrix": [[[re, im], ...], ...]} row-major.
DensityMatrix state_from_json(const json& j);
json state_to_json(const DensityMatrix& rho);
DensityMatrix load_state(const std::string& path);

// Channel files: {"kind": "...", ...} with kind-specific parameters, or
// {"kind": "kraus", "dim": d, "ops": [matrix, ...]} in the state entry
// format, or {"kind": "identity", "dim": d}.
Channel channel_from_json(const json& j);
json channel_to_json(const Channel& c);
Channel load_channel(const std::string& path);

// Fixed significant-digit formatting ("%.{precision}g").
std::string format_sig(double x, int precision);

} // namespace cohfrac::io
