#include "ukk/report_json.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "ukk/error.hpp"

namespace ukk {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

bool is_index(const json& j) { return j.is_number_integer() && j.get<std::int64_t>() >= 0; }

json family_json(const std::vector<LatticeVector>& family) {
  json out = json::array();
  for (const auto& v : family) out.push_back(vector_json(v));
  return out;
}

}  // namespace

json vector_json(const LatticeVector& v) {
  json out = json::array();
  for (double x : v.coords()) out.push_back(x);
  return out;
}

json sparse_vector_json(const LatticeVector& v) {
  json nz = json::array();
  for (std::size_t i : v.support()) nz.push_back(json::array({i, v[i]}));
  return {{"dim", v.dim()}, {"nz", std::move(nz)}};
}

LatticeVector vector_from_json(const json& j, const std::string& path) {
  auto fail = [&](const std::string& msg) { throw ConfigError(path, msg); };
  std::vector<double> coords;
  if (j.is_array()) {
    for (const auto& x : j) {
      if (!x.is_number()) fail("coordinates must be numbers");
      coords.push_back(x.get<double>());
    }
  } else if (j.is_object() && j.contains("dim") && j.contains("nz")) {
    if (!is_index(j["dim"])) fail("dim must be a positive integer");
    coords.assign(j["dim"].get<std::size_t>(), 0.0);
    for (const auto& e : j["nz"]) {
      if (!e.is_array() || e.size() != 2 || !is_index(e[0]) || !e[1].is_number()) {
        fail("nz entries must be [index, value]");
      }
      const auto i = e[0].get<std::size_t>();
      if (i >= coords.size()) fail("nz index out of range");
      coords[i] = e[1].get<double>();
    }
  } else {
    fail("expected a coordinate array or {dim, nz}");
  }
  if (coords.empty()) fail("vector must have at least one coordinate");
  for (double x : coords) {
    if (!std::isfinite(x)) fail("coordinates must be finite");
  }
  return LatticeVector(std::move(coords));
}

json partition_json(const SupportPartition& p) {
  json out = json::array();
  for (const auto& b : p.blocks) out.push_back(b);
  return out;
}

json audit_json(const NormAuditReport& r, const NormOracle& n) {
  return {{"schema_version", kSchemaVersion},
          {"record", "space_check"},
          {"space", n.describe()},
          {"dim", n.dim()},
          {"samples", r.samples},
          {"seed", r.seed},
          {"tol", r.tol},
          {"zero_ok", r.zero_ok},
          {"positivity_violations", r.positivity_violations},
          {"worst_homogeneity", number(r.worst_homogeneity)},
          {"worst_triangle", number(r.worst_triangle)},
          {"worst_monotonicity", number(r.worst_monotonicity)},
          {"declared_lattice_constant", r.declared_lattice_constant},
          {"empirical_lattice_constant", number(r.empirical_lattice_constant)},
          {"absolute", n.is_absolute()},
          {"pass", r.pass},
          {"first_failure", r.first_failure}};
}

json renorm_json(const RenormResult& r) {
  return {{"schema_version", kSchemaVersion},
          {"record", "renorm"},
          {"value", number(r.value)},
          {"witness", partition_json(r.witness)},
          {"method", std::string(to_string(r.method))},
          {"p", r.p},
          {"base_norm", r.base_norm.describe()}};
}

json estimate_json(const EstimateReport& r, const NormOracle& n) {
  json kr = json::array();
  for (const auto& e : r.kr_table) {
    const auto& v = e.verification;
    kr.push_back({{"r", e.r},
                  {"K_r", number(e.constant)},
                  {"verification",
                   {{"trials", v.trials},
                    {"violations", v.violations},
                    {"worst_ratio", number(v.worst_ratio)},
                    {"worst_family", family_json(v.worst_family)}}}});
  }
  json lower = nullptr;
  if (r.lower_p) {
    lower = {{"p", r.lower_p->p},
             {"constant", number(r.lower_p->c_hat)},
             {"witness", family_json(r.lower_p->witness)},
             {"trials", r.lower_p->trials}};
  }
  const auto& td = r.two_disjoint;
  return {{"schema_version", kSchemaVersion},
          {"record", "estimate"},
          {"space", n.describe()},
          {"status", r.status()},
          {"hypothesis_holds", r.hypothesis_holds},
          {"c_hat", number(td.c_hat)},
          {"c_hat_witness", {vector_json(td.x), vector_json(td.y)}},
          {"p_derived", r.p_derived ? number(*r.p_derived) : json(nullptr)},
          {"kr_table", std::move(kr)},
          {"lower_p_constant", std::move(lower)},
          {"budget_used",
           {{"budget", r.budget},
            {"two_disjoint_trials", td.trials},
            {"refinement_steps", td.refinement_steps}}},
          {"violations", r.total_violations()},
          {"seed", r.seed}};
}

json trial_json(const UkkTrial& t, bool include_sequence) {
  json j = {{"schema_version", kSchemaVersion},
            {"record", "ukk_trial"},
            {"index", t.index},
            {"seed", t.seed},
            {"p", t.p},
            {"horizon", t.horizon},
            {"tol", t.tol},
            {"status", std::string(to_string(t.status))},
            {"pass", t.pass},
            {"epsilon_measured", number(t.epsilon_measured)},
            {"delta_bound", number(t.delta_bound)},
            {"limit_renorm", number(t.limit_renorm)},
            {"max_element_renorm", number(t.max_element_renorm)},
            {"liminf_distance", number(t.liminf_distance)},
            {"liminf_ok", t.liminf_ok},
            {"advisory", t.advisory},
            {"invalid_reason", t.invalid_reason}};
  if (include_sequence) {
    json seq = json::array();
    for (const auto& x : t.sequence) seq.push_back(sparse_vector_json(x));
    j["sequence"] = std::move(seq);
    j["declared_limit"] = t.declared_limit ? sparse_vector_json(*t.declared_limit) : json(nullptr);
  }
  return j;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string trial_csv_header() { return "index,seed,epsilon,delta,limit_renorm,status,pass"; }

std::string trial_csv_row(const UkkTrial& t) {
  return std::to_string(t.index) + ',' + std::to_string(t.seed) + ',' +
         format_double(t.epsilon_measured) + ',' + format_double(t.delta_bound) + ',' +
         format_double(t.limit_renorm) + ',' + std::string(to_string(t.status)) + ',' +
         (t.pass ? "true" : "false");
}

}  // namespace ukk
