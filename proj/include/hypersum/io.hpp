#pragma once

// JSON circuit documents:
//
//   {"n": 3, "family": "thr" | "ethr" | "relu" | "fp", "p": 5 (fp only),
//    "coefficients": ["1", "-1/2", ...]   (optional, defaults to all 1),
//    "gates": [...],
//    "targets": [0, 2, ...]               (fp only, optional, for count-system)}
//
// THR/ETHR gate: {"weights": ["2", "-1/3", ...], "threshold": "1"}
// ReLU gate:     {"weights": [...], "bias": "..."}
// F_p gate:      {"monomials": [{"vars": [1, 3], "coeff": 2}, ...], "degree": 2 (optional)}
//
// Rationals are strings "p" or "p/q"; variables are 1-indexed.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypersum/gates.hpp"

namespace hypersum {

struct CircuitDocument {
  LinComb combination;
  std::vector<std::uint32_t> targets;  // fp only; defaults to zeros
};

CircuitDocument parse_document(const nlohmann::json& doc);
CircuitDocument load_document(const std::filesystem::path& path);

nlohmann::json to_json(const LinComb& c, const std::vector<std::uint32_t>& targets = {});

}  // namespace hypersum
