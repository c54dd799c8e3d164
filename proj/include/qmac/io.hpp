#pragma once

#include <string>

#include <json.hpp>

#include "qmac/models.hpp"

namespace qmac {

// Malformed user input (files, channel specs); the CLI maps this to exit 2.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

using json = nlohmann::ordered_json;

json shape_to_json(const SystemShape& shape);
SystemShape shape_from_json(const json& j);

// {"shape": [["A",2],...], "kind": "density"|"pure", "data": [[re,im],...]}
// row-major.
json density_to_json(const DensityMatrix& rho);
json pure_to_json(const PureState& psi);
DensityMatrix density_from_json(const json& j);
PureState pure_from_json(const json& j);

// {"name":..., "arity":"single"|"mac2", "in_shape":..., "out_shape":...,
//  "kraus":[[[re,im],...],...]}; mac2 channels carry "alice_labels".
json channel_to_json(const Channel& ch, const std::string& name = "");
Channel channel_from_json(const json& j);

json region_to_json(const Region2D& r, const json& meta);
// x,y,hull lines; '.' decimal, 12 significant digits.
std::string region_to_csv(const Region2D& r);

std::string format_sig12(double v);

// Resolves "erasure:d=2", "phaseflip:p=0.1", "dephasing:file=PATH", or a
// channel JSON file path.
NamedChannel resolve_channel(const std::string& spec);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace qmac
