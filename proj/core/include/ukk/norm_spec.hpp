#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ukk/norm.hpp"

namespace ukk {

/// Parses the norm grammar used in experiment configs:
///
///   {"kind":"Lq", "q":2, "dim":8}                 q may be "inf"
///   {"kind":"WeightedLq", "q":2, "weights":[...]}
///   {"kind":"Block", "dim":8, "outer":{...},
///    "blocks":[[0,1],[2,3],...] | "block_size":2,
///    "inner":{...} | [{...}, ...]}
///   {"kind":"Remark2Wrap", "base":{...}}
///
/// Nested specs may omit "dim" where it is implied by the parent. Errors are
/// ConfigError carrying the dotted path of the offending field.
NormOracle parse_norm_spec(const nlohmann::json& spec, const std::string& path = "space",
                           std::optional<std::size_t> implied_dim = std::nullopt);

/// Inverse of parse_norm_spec with every dimension explicit. Custom oracles
/// are serialized as {"kind":"Custom","name":...} and cannot be parsed back.
nlohmann::json norm_to_json(const NormOracle& n);

}  // namespace ukk
