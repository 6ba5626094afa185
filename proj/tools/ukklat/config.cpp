#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ukk/error.hpp"
#include "ukk/norm_spec.hpp"
#include "ukk/report_json.hpp"

namespace ukklat {

using nlohmann::json;
using ukk::ConfigError;

namespace {

// Reads the fields of one JSON object and rejects keys nobody asked for.
class Fields {
 public:
  Fields(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_, "expected an object");
  }

  std::string at(const std::string& key) const { return path_ + "." + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::optional<double> real(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_number()) throw ConfigError(at(key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) throw ConfigError(at(key), "must be finite");
    return d;
  }

  std::optional<std::uint64_t> count(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_number_integer() || v->get<std::int64_t>() < 0) {
      throw ConfigError(at(key), "expected a nonnegative integer");
    }
    return v->get<std::uint64_t>();
  }

  std::optional<bool> flag(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) throw ConfigError(at(key), "expected true or false");
    return v->get<bool>();
  }

  std::optional<std::string> text(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) throw ConfigError(at(key), "expected a string");
    return v->get<std::string>();
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.count(key)) throw ConfigError(at(key), "unknown field");
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

double exponent(Fields& f, const std::string& key, bool required) {
  const auto p = f.real(key);
  if (!p) {
    if (required) throw ConfigError(f.at(key), "required");
    return 1.0;
  }
  if (*p < 1.0) throw ConfigError(f.at(key), "p must be >= 1");
  return *p;
}

double probability(Fields& f, const std::string& key, double fallback) {
  const double v = f.real(key).value_or(fallback);
  if (v < 0.0 || v > 1.0) throw ConfigError(f.at(key), "must lie in [0, 1]");
  return v;
}

ukk::HeuristicConfig parse_heuristic(const json& j, const std::string& path) {
  Fields f(j, path);
  ukk::HeuristicConfig h;
  if (auto v = f.count("seed")) h.seed = *v;
  if (auto v = f.count("restarts")) h.restarts = static_cast<unsigned>(*v);
  if (auto v = f.count("split_cuts")) h.split_cuts = static_cast<unsigned>(*v);
  if (auto v = f.count("max_steps")) h.max_steps = static_cast<unsigned>(*v);
  f.finish();
  return h;
}

SpaceCheckBlock parse_space_check(const json& j) {
  Fields f(j, "space_check");
  SpaceCheckBlock b;
  if (auto v = f.count("samples")) b.samples = *v;
  if (auto v = f.real("tol")) {
    if (*v <= 0.0) throw ConfigError(f.at("tol"), "must be positive");
    b.tol = *v;
  }
  b.seed = f.count("seed");
  f.finish();
  return b;
}

EstimateBlock parse_estimate(const json& j) {
  Fields f(j, "estimate");
  EstimateBlock b;
  if (auto v = f.count("budget")) b.budget = *v;
  b.seed = f.count("seed");
  if (const json* r = f.find("r_values")) {
    if (!r->is_array()) throw ConfigError(f.at("r_values"), "expected an array of numbers");
    for (std::size_t i = 0; i < r->size(); ++i) {
      const auto& e = (*r)[i];
      if (!e.is_number() || !(e.get<double>() >= 1.0)) {
        throw ConfigError(f.at("r_values") + "[" + std::to_string(i) + "]", "r must be a number >= 1");
      }
      b.r_values.push_back(e.get<double>());
    }
  }
  if (auto v = f.real("kr_tail_tol")) {
    if (*v <= 0.0 || *v >= 1.0) throw ConfigError(f.at("kr_tail_tol"), "must lie in (0, 1)");
    b.kr_tail_tol = *v;
  }
  if (f.real("lower_p")) b.lower_p = exponent(f, "lower_p", false);
  if (auto v = f.count("lower_p_budget")) b.lower_p_budget = *v;
  if (auto v = f.count("verify_trials")) b.verify_trials = *v;
  f.finish();
  return b;
}

RenormBlock parse_renorm(const json& j, std::size_t dim) {
  Fields f(j, "renorm");
  RenormBlock b;
  b.p = exponent(f, "p", true);
  if (const json* vs = f.find("vectors")) {
    if (!vs->is_array()) throw ConfigError(f.at("vectors"), "expected an array of vectors");
    for (std::size_t i = 0; i < vs->size(); ++i) {
      const std::string path = f.at("vectors") + "[" + std::to_string(i) + "]";
      ukk::LatticeVector v = ukk::vector_from_json((*vs)[i], path);
      if (v.dim() != dim) {
        throw ConfigError(path, "has dimension " + std::to_string(v.dim()) + ", space has " +
                                    std::to_string(dim));
      }
      b.vectors.push_back(std::move(v));
    }
  }
  if (const json* r = f.find("random")) {
    Fields rf(*r, f.at("random"));
    b.random.count = rf.count("count").value_or(0);
    b.random.max_support = rf.count("max_support").value_or(8);
    if (b.random.max_support == 0) throw ConfigError(rf.at("max_support"), "must be positive");
    rf.finish();
  }
  if (auto m = f.text("mode")) {
    if (*m == "auto") b.mode = RenormMode::Auto;
    else if (*m == "exact") b.mode = RenormMode::Exact;
    else if (*m == "heuristic") b.mode = RenormMode::Heuristic;
    else throw ConfigError(f.at("mode"), "expected auto, exact or heuristic");
  }
  b.seed = f.count("seed");
  if (auto v = f.count("exact_threshold")) {
    if (*v > ukk::kMaxEnumerable) {
      throw ConfigError(f.at("exact_threshold"),
                        "at most " + std::to_string(ukk::kMaxEnumerable));
    }
    b.options.exact_threshold = *v;
  }
  if (const json* h = f.find("heuristic")) b.options.heuristic = parse_heuristic(*h, f.at("heuristic"));
  f.finish();
  return b;
}

UkkBlock parse_ukk(const json& j, std::size_t dim, OutputBlock& out) {
  Fields f(j, "ukk");
  UkkBlock b;
  auto& c = b.campaign;
  c.p = exponent(f, "p", true);
  if (auto v = f.count("trials")) c.trials = *v;
  b.seed = f.count("seed");
  if (auto v = f.count("core_atoms")) c.core_atoms = *v;
  if (c.core_atoms >= dim) {
    throw ConfigError(f.at("core_atoms"), "leaves no fresh atoms in dimension " + std::to_string(dim));
  }
  const auto horizon = f.count("horizon");
  c.horizon = horizon.value_or(dim - c.core_atoms);
  if (c.core_atoms + c.horizon != dim) {
    throw ConfigError(f.at("horizon"), "core_atoms + horizon must equal the space dimension " +
                                           std::to_string(dim));
  }
  if (c.horizon < 2) throw ConfigError(f.at("horizon"), "must be at least 2");
  if (const json* bump = f.find("bump")) {
    Fields bf(*bump, f.at("bump"));
    c.min_bump = bf.real("min").value_or(c.min_bump);
    c.max_bump = bf.real("max").value_or(c.max_bump);
    if (auto v = bf.real("fixed")) {
      if (*v < 0.0) throw ConfigError(bf.at("fixed"), "must be >= 0");
      c.fixed_bump = *v;
    }
    if (!(0.0 < c.min_bump && c.min_bump <= c.max_bump)) {
      throw ConfigError(bf.at("min"), "need 0 < min <= max");
    }
    c.sphere_probability = probability(bf, "sphere_probability", c.sphere_probability);
    c.fuzz = bf.flag("fuzz").value_or(c.fuzz);
    bf.finish();
  }
  if (auto v = f.real("tol")) {
    if (*v < 0.0) throw ConfigError(f.at("tol"), "must be >= 0");
    c.tol = *v;
  }
  if (auto v = f.count("exact_threshold")) {
    if (*v > ukk::kMaxEnumerable) {
      throw ConfigError(f.at("exact_threshold"), "at most " + std::to_string(ukk::kMaxEnumerable));
    }
    c.renorm.exact_threshold = *v;
  }
  if (const json* h = f.find("heuristic")) c.renorm.heuristic = parse_heuristic(*h, f.at("heuristic"));
  if (auto v = f.flag("include_sequences")) out.include_sequences = *v;
  f.finish();
  return b;
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  Fields f(doc, "config");
  ExperimentConfig cfg;
  const json* space = f.find("space");
  if (!space) throw ConfigError("space", "required");
  cfg.space_spec = *space;
  cfg.space = ukk::parse_norm_spec(*space, "space");
  const std::size_t dim = cfg.space->dim();

  cfg.seed = f.count("seed");
  if (const json* b = f.find("space_check")) cfg.space_check = parse_space_check(*b);
  if (const json* b = f.find("estimate")) cfg.estimate = parse_estimate(*b);
  if (const json* b = f.find("renorm")) cfg.renorm = parse_renorm(*b, dim);
  if (const json* b = f.find("output")) {
    Fields of(*b, "output");
    if (auto d = of.text("dir")) cfg.output.dir = *d;
    if (auto v = of.flag("include_sequences")) cfg.output.include_sequences = *v;
    of.finish();
  }
  if (const json* b = f.find("ukk")) cfg.ukk = parse_ukk(*b, dim, cfg.output);
  f.finish();
  return cfg;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string(), "JSON syntax error at " + line_column(text, e.byte));
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) { return parse_config(read_json_file(path)); }

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& override_seed,
                           const std::optional<std::uint64_t>& block_seed,
                           const ExperimentConfig& cfg, const std::string& block) {
  if (override_seed) return *override_seed;
  if (block_seed) return *block_seed;
  if (cfg.seed) return *cfg.seed;
  throw ConfigError(block + ".seed", "a seed is required (set it in the config or pass --seed)");
}

}  // namespace ukklat
