#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ukk/estimates.hpp"
#include "ukk/lattice.hpp"
#include "ukk/norm.hpp"
#include "ukk/renorm.hpp"
#include "ukk/ukk_harness.hpp"

namespace ukk {

// JSON records emitted by the CLI. Every top-level record carries
// "schema_version"; doubles are written in shortest round-trip form and
// non-finite values become null.

inline constexpr int kSchemaVersion = 1;

/// Dense coordinate array.
nlohmann::json vector_json(const LatticeVector& v);

/// {"dim": d, "nz": [[i, x_i], ...]} over the nonzero atoms.
nlohmann::json sparse_vector_json(const LatticeVector& v);

/// Inverse of vector_json / sparse_vector_json (accepts either form).
LatticeVector vector_from_json(const nlohmann::json& j, const std::string& path = "vector");

nlohmann::json partition_json(const SupportPartition& p);

nlohmann::json audit_json(const NormAuditReport& r, const NormOracle& n);
nlohmann::json renorm_json(const RenormResult& r);
nlohmann::json estimate_json(const EstimateReport& r, const NormOracle& n);

/// One UkkTrial per JSON line. Sequences and the limit are stored sparsely so
/// the trial can be replayed through run_ukk_trial.
nlohmann::json trial_json(const UkkTrial& t, bool include_sequence = true);

/// Shortest round-trip decimal form ("inf", "-inf", "nan" for non-finite).
std::string format_double(double v);

std::string trial_csv_header();
std::string trial_csv_row(const UkkTrial& t);

}  // namespace ukk
