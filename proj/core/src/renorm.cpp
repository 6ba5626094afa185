#include "ukk/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "ukk/error.hpp"
#include "ukk/random.hpp"
#include "ukk/tolerance.hpp"

namespace ukk {

namespace {

double root(double power_sum, double p) { return p == 1.0 ? power_sum : std::pow(power_sum, 1.0 / p); }

// ‖restrict(x, atoms)‖^p through a reusable zero buffer. Every power value in
// this file goes through here so that equal blocks give bitwise-equal values.
class BlockPower {
 public:
  BlockPower(const NormOracle& n, double p, const LatticeVector& x)
      : norm_(n), p_(p), x_(x), buf_(x.dim(), 0.0) {}

  template <typename Atoms>
  double operator()(const Atoms& atoms) {
    for (std::size_t i : atoms) buf_[i] = x_[i];
    const double v = norm_.eval(buf_);
    for (std::size_t i : atoms) buf_[i] = 0.0;
    return p_ == 1.0 ? v : std::pow(v, p_);
  }

 private:
  const NormOracle& norm_;
  double p_;
  const LatticeVector& x_;
  std::vector<double> buf_;
};

// Local search state over support positions 0..n-1.
class PartitionSearch {
 public:
  PartitionSearch(const NormOracle& n, double p, const LatticeVector& x,
                  std::vector<std::size_t> support, const HeuristicConfig& cfg)
      : power_(n, p, x), support_(std::move(support)), cfg_(cfg), rng_(cfg.seed) {}

  Rng& rng() { return rng_; }

  std::vector<std::vector<std::size_t>> climb(std::vector<std::vector<std::size_t>> blocks) {
    std::vector<double> vals;
    vals.reserve(blocks.size());
    for (const auto& b : blocks) vals.push_back(value(b));

    for (unsigned step = 0; step < cfg_.max_steps; ++step) {
      double total = 0.0;
      for (double v : vals) total += v;
      const double threshold = 1e-12 * total;

      double best_gain = threshold;
      std::vector<std::vector<std::size_t>> best_blocks;
      std::vector<std::size_t> best_replaced;  // block indices removed by the move

      const std::size_t k = blocks.size();
      // move one atom from block i to block j (or to a new singleton)
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t e = 0; e < blocks[i].size(); ++e) {
          std::vector<std::size_t> rest = blocks[i];
          const std::size_t atom = rest[e];
          rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(e));
          const double rest_val = rest.empty() ? 0.0 : value(rest);
          for (std::size_t j = 0; j <= k; ++j) {
            if (j == i) continue;
            if (j == k && rest.empty()) continue;  // moving a singleton to a new singleton
            std::vector<std::size_t> grown = j < k ? blocks[j] : std::vector<std::size_t>{};
            grown.push_back(atom);
            std::sort(grown.begin(), grown.end());
            const double old = vals[i] + (j < k ? vals[j] : 0.0);
            const double gain = rest_val + value(grown) - old;
            if (gain > best_gain) {
              best_gain = gain;
              best_blocks.clear();
              if (!rest.empty()) best_blocks.push_back(rest);
              best_blocks.push_back(std::move(grown));
              best_replaced = j < k ? std::vector<std::size_t>{i, j} : std::vector<std::size_t>{i};
            }
          }
        }
      }
      // merge two blocks
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          std::vector<std::size_t> merged = blocks[i];
          merged.insert(merged.end(), blocks[j].begin(), blocks[j].end());
          std::sort(merged.begin(), merged.end());
          const double gain = value(merged) - vals[i] - vals[j];
          if (gain > best_gain) {
            best_gain = gain;
            best_blocks = {std::move(merged)};
            best_replaced = {i, j};
          }
        }
      }
      // split a block at a random cut
      for (std::size_t i = 0; i < k; ++i) {
        if (blocks[i].size() < 2) continue;
        for (unsigned c = 0; c < cfg_.split_cuts; ++c) {
          std::vector<std::size_t> order = blocks[i];
          rng_.shuffle(order);
          const std::size_t cut = 1 + rng_.below(order.size() - 1);
          std::vector<std::size_t> a(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cut));
          std::vector<std::size_t> b(order.begin() + static_cast<std::ptrdiff_t>(cut), order.end());
          std::sort(a.begin(), a.end());
          std::sort(b.begin(), b.end());
          const double gain = value(a) + value(b) - vals[i];
          if (gain > best_gain) {
            best_gain = gain;
            best_blocks = {std::move(a), std::move(b)};
            best_replaced = {i};
          }
        }
      }

      if (best_blocks.empty()) break;
      std::sort(best_replaced.rbegin(), best_replaced.rend());
      for (std::size_t idx : best_replaced) {
        blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(idx));
        vals.erase(vals.begin() + static_cast<std::ptrdiff_t>(idx));
      }
      for (auto& b : best_blocks) {
        vals.push_back(value(b));
        blocks.push_back(std::move(b));
      }
    }
    return blocks;
  }

  SupportPartition to_atoms(const std::vector<std::vector<std::size_t>>& blocks) const {
    SupportPartition p;
    for (const auto& b : blocks) {
      std::vector<std::size_t> atoms;
      for (std::size_t pos : b) atoms.push_back(support_[pos]);
      p.blocks.push_back(std::move(atoms));
    }
    return canonicalize(std::move(p));
  }

 private:
  double value(const std::vector<std::size_t>& positions) {
    std::uint64_t key = 0;
    const bool cacheable = support_.size() <= 64;
    if (cacheable) {
      for (std::size_t pos : positions) key |= std::uint64_t{1} << pos;
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    atoms_.clear();
    for (std::size_t pos : positions) atoms_.push_back(support_[pos]);
    const double v = power_(atoms_);
    if (cacheable) cache_.emplace(key, v);
    return v;
  }

  BlockPower power_;
  std::vector<std::size_t> support_;
  HeuristicConfig cfg_;
  Rng rng_;
  std::unordered_map<std::uint64_t, double> cache_;
  std::vector<std::size_t> atoms_;
};

}  // namespace

std::string_view to_string(RenormMethod m) noexcept {
  return m == RenormMethod::Exact ? "exact" : "heuristic";
}

void require_renorm_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw DomainError("renorm exponent p must satisfy 1 <= p < inf (got " + std::to_string(p) + ")");
  }
}

double partition_power_sum(const NormOracle& n, double p, const LatticeVector& x,
                           const SupportPartition& partition) {
  require_same_dim(n.dim(), x.dim());
  BlockPower power(n, p, x);
  double s = 0.0;
  for (const auto& b : canonicalize(partition).blocks) {
    for (std::size_t i : b) {
      if (i >= x.dim()) throw std::out_of_range("partition atom out of range");
    }
    s += power(b);
  }
  return s;
}

double partition_objective(const NormOracle& n, double p, const LatticeVector& x,
                           const SupportPartition& partition) {
  return root(partition_power_sum(n, p, x, partition), p);
}

RenormResult renorm_exact(const NormOracle& n, double p, const LatticeVector& x,
                          std::size_t exact_threshold) {
  require_renorm_exponent(p);
  require_same_dim(n.dim(), x.dim());
  const auto support = x.support();
  const std::size_t m = support.size();
  if (m > exact_threshold || m > kMaxEnumerable) {
    throw SupportTooLarge(m, std::min(exact_threshold, kMaxEnumerable));
  }
  RenormResult result{.value = 0.0, .witness = {}, .method = RenormMethod::Exact, .p = p, .base_norm = n};
  if (m == 0) return result;

  // power value of every nonempty subset of the support, indexed by bitmask
  BlockPower power(n, p, x);
  std::vector<double> subset_power(std::size_t{1} << m, 0.0);
  std::vector<std::size_t> atoms;
  for (std::uint32_t mask = 1; mask < subset_power.size(); ++mask) {
    atoms.clear();
    for (std::size_t b = 0; b < m; ++b) {
      if (mask & (std::uint32_t{1} << b)) atoms.push_back(support[b]);
    }
    subset_power[mask] = power(atoms);
  }

  double best = -1.0;
  std::vector<std::uint32_t> best_masks;
  for_each_set_partition(m, [&](std::span<const std::uint32_t> masks) {
    double s = 0.0;
    for (std::uint32_t mk : masks) s += subset_power[mk];
    if (s > best) {
      best = s;
      best_masks.assign(masks.begin(), masks.end());
    }
  });

  for (std::uint32_t mk : best_masks) {
    std::vector<std::size_t> block;
    for (std::size_t b = 0; b < m; ++b) {
      if (mk & (std::uint32_t{1} << b)) block.push_back(support[b]);
    }
    result.witness.blocks.push_back(std::move(block));
  }
  result.value = root(best, p);
  return result;
}

RenormResult renorm_heuristic(const NormOracle& n, double p, const LatticeVector& x,
                              const HeuristicConfig& config) {
  require_renorm_exponent(p);
  require_same_dim(n.dim(), x.dim());
  const auto support = x.support();
  RenormResult result{.value = 0.0, .witness = {}, .method = RenormMethod::Heuristic, .p = p, .base_norm = n};
  if (support.empty()) return result;

  const std::size_t m = support.size();
  PartitionSearch search(n, p, x, support, config);

  std::vector<std::size_t> positions(m);
  for (std::size_t i = 0; i < m; ++i) positions[i] = i;

  std::vector<std::vector<std::vector<std::size_t>>> starts;
  starts.push_back({positions});
  if (m > 1) {
    std::vector<std::vector<std::size_t>> singles;
    for (std::size_t i = 0; i < m; ++i) singles.push_back({i});
    starts.push_back(std::move(singles));
  }

  double best = -1.0;
  auto consider = [&](const std::vector<std::vector<std::size_t>>& blocks) {
    SupportPartition cand = search.to_atoms(blocks);
    const double s = partition_power_sum(n, p, x, cand);
    if (s > best) {
      best = s;
      result.witness = std::move(cand);
    }
  };

  for (auto& s : starts) consider(search.climb(std::move(s)));
  if (m > 2) {
    for (unsigned r = 0; r < config.restarts; ++r) {
      consider(search.climb(sample_partition(search.rng(), positions)));
    }
  }
  result.value = root(best, p);
  return result;
}

RenormResult renorm(const NormOracle& n, double p, const LatticeVector& x,
                    const RenormOptions& options) {
  if (x.support_size() <= std::min(options.exact_threshold, kMaxEnumerable)) {
    return renorm_exact(n, p, x, options.exact_threshold);
  }
  return renorm_heuristic(n, p, x, options.heuristic);
}

SuperadditivityCheck check_superadditivity(const NormOracle& n, double p, const LatticeVector& x,
                                           const LatticeVector& y, std::size_t exact_threshold) {
  if (!is_disjoint(x, y)) {
    throw std::invalid_argument("check_superadditivity: x and y are not disjoint");
  }
  SuperadditivityCheck c;
  c.x_value = renorm_exact(n, p, x, exact_threshold).value;
  c.y_value = renorm_exact(n, p, y, exact_threshold).value;
  c.sum_value = renorm_exact(n, p, x + y, exact_threshold).value;
  const double lhs = std::pow(c.x_value, p) + std::pow(c.y_value, p);
  const double rhs = std::pow(c.sum_value, p);
  c.slack = rhs - lhs;
  c.pass = leq_tol(lhs, rhs);
  return c;
}

EquivalenceAudit audit_equivalence(const NormOracle& n, double p, double constant,
                                   std::uint64_t samples, std::uint64_t seed,
                                   std::size_t max_support) {
  require_renorm_exponent(p);
  EquivalenceAudit a;
  a.samples = samples;
  a.seed = seed;
  a.constant = constant;
  a.worst_lower_ratio = kInfinity;
  const std::size_t dim = n.dim();
  const std::size_t cap = std::max<std::size_t>(1, std::min({max_support, dim, kExactThreshold}));
  Rng rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto atoms = sample_support(rng, dim, cap);
    const LatticeVector x = sample_on_atoms(rng, dim, atoms, sample_shape(rng));
    const double base = eval_norm(n, x);
    const double value = renorm_exact(n, p, x).value;
    if (!leq_tol(base, value)) ++a.lower_violations;
    if (!leq_tol(value, constant * base)) ++a.upper_violations;
    const double ratio = value / base;
    a.worst_lower_ratio = std::min(a.worst_lower_ratio, ratio);
    if (ratio > a.worst_upper_ratio) {
      a.worst_upper_ratio = ratio;
      a.worst_upper_witness = x;
    }
  }
  a.pass = a.lower_violations == 0 && a.upper_violations == 0;
  return a;
}

}  // namespace ukk
