#include "ukk/norm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ukk/error.hpp"
#include "ukk/random.hpp"

namespace ukk {

struct NormOracle::Node {
  NormKind kind = NormKind::Lq;
  std::size_t dim = 0;
  double q = 2.0;
  std::vector<double> weights;
  std::vector<NormOracle> children;  // Block: outer then inner...; Remark2Wrap: base
  std::vector<std::vector<std::size_t>> blocks;
  std::string name;
  Fn fn;
  double lattice_constant = 1.0;
  bool absolute = true;
};

namespace {

void require_q(double q) {
  if (std::isnan(q) || q < 1.0) {
    throw DomainError("norm exponent q must be >= 1 (got " + std::to_string(q) + ")");
  }
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::fabs(v));
  return m;
}

double lq_eval(std::span<const double> x, double q) {
  if (q == kInfinity) return max_abs(x);
  if (q == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::fabs(v);
    return s;
  }
  const double m = max_abs(x);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  if (q == 2.0) {
    for (double v : x) {
      const double t = v / m;
      s += t * t;
    }
    return m * std::sqrt(s);
  }
  for (double v : x) s += std::pow(std::fabs(v) / m, q);
  return m * std::pow(s, 1.0 / q);
}

double weighted_eval(std::span<const double> x, double q, const std::vector<double>& w) {
  if (q == kInfinity) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, w[i] * std::fabs(x[i]));
    return m;
  }
  const double m = max_abs(x);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(std::fabs(x[i]) / m, q);
  return m * std::pow(s, 1.0 / q);
}

std::string format_q(double q) {
  if (q == kInfinity) return "inf";
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace

NormOracle NormOracle::lq(double q, std::size_t dim) {
  require_q(q);
  if (dim == 0) throw std::invalid_argument("Lq: dim must be >= 1");
  auto n = std::make_shared<Node>();
  n->kind = NormKind::Lq;
  n->dim = dim;
  n->q = q;
  return NormOracle(std::move(n));
}

NormOracle NormOracle::weighted_lq(double q, std::vector<double> weights) {
  require_q(q);
  if (weights.empty()) throw std::invalid_argument("WeightedLq: weights must be nonempty");
  for (double w : weights) {
    if (!std::isfinite(w) || w <= 0.0) {
      throw DomainError("WeightedLq: weights must be positive and finite");
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = NormKind::WeightedLq;
  n->dim = weights.size();
  n->q = q;
  n->weights = std::move(weights);
  return NormOracle(std::move(n));
}

NormOracle NormOracle::block(NormOracle outer, std::vector<std::vector<std::size_t>> blocks,
                             std::vector<NormOracle> inner) {
  if (blocks.empty()) throw std::invalid_argument("Block: at least one block required");
  if (inner.size() != blocks.size()) {
    throw std::invalid_argument("Block: need one inner norm per block");
  }
  if (outer.dim() != blocks.size()) {
    throw DimensionMismatch(outer.dim(), blocks.size());
  }
  std::size_t dim = 0;
  for (auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("Block: empty block");
    std::sort(b.begin(), b.end());
    dim += b.size();
  }
  std::vector<char> seen(dim, 0);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    for (std::size_t i : blocks[k]) {
      if (i >= dim || seen[i]) {
        throw std::invalid_argument("Block: blocks must partition {0.." +
                                    std::to_string(dim - 1) + "}");
      }
      seen[i] = 1;
    }
    if (inner[k].dim() != blocks[k].size()) {
      throw DimensionMismatch(inner[k].dim(), blocks[k].size());
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = NormKind::Block;
  n->dim = dim;
  double inner_k = 1.0;
  bool absolute = outer.is_absolute();
  for (const auto& in : inner) {
    inner_k = std::max(inner_k, in.lattice_constant());
    absolute = absolute && in.is_absolute();
  }
  n->lattice_constant = outer.lattice_constant() * inner_k;
  n->absolute = absolute;
  n->children.reserve(inner.size() + 1);
  n->children.push_back(std::move(outer));
  for (auto& in : inner) n->children.push_back(std::move(in));
  n->blocks = std::move(blocks);
  return NormOracle(std::move(n));
}

NormOracle NormOracle::uniform_block(NormOracle outer, NormOracle inner, std::size_t block_size) {
  if (block_size == 0) throw std::invalid_argument("Block: block_size must be >= 1");
  const std::size_t count = outer.dim();
  std::vector<std::vector<std::size_t>> blocks(count);
  for (std::size_t b = 0; b < count; ++b) {
    for (std::size_t j = 0; j < block_size; ++j) blocks[b].push_back(b * block_size + j);
  }
  std::vector<NormOracle> inners(count, inner);
  return block(std::move(outer), std::move(blocks), std::move(inners));
}

NormOracle NormOracle::remark2(NormOracle base) {
  auto n = std::make_shared<Node>();
  n->kind = NormKind::Remark2Wrap;
  n->dim = base.dim();
  n->lattice_constant = 2.0 * base.lattice_constant();
  n->absolute = false;
  n->children.push_back(std::move(base));
  return NormOracle(std::move(n));
}

NormOracle NormOracle::custom(std::string name, std::size_t dim, Fn fn, double lattice_constant) {
  if (dim == 0) throw std::invalid_argument("custom norm: dim must be >= 1");
  if (!fn) throw std::invalid_argument("custom norm: empty callable");
  auto n = std::make_shared<Node>();
  n->kind = NormKind::Custom;
  n->dim = dim;
  n->name = std::move(name);
  n->fn = std::move(fn);
  n->lattice_constant = lattice_constant;
  n->absolute = false;
  return NormOracle(std::move(n));
}

NormKind NormOracle::kind() const noexcept { return node_->kind; }
std::size_t NormOracle::dim() const noexcept { return node_->dim; }
double NormOracle::lattice_constant() const noexcept { return node_->lattice_constant; }
bool NormOracle::is_absolute() const noexcept { return node_->absolute; }

double NormOracle::eval(std::span<const double> x) const {
  require_same_dim(node_->dim, x.size());
  const Node& n = *node_;
  switch (n.kind) {
    case NormKind::Lq:
      return lq_eval(x, n.q);
    case NormKind::WeightedLq:
      return weighted_eval(x, n.q, n.weights);
    case NormKind::Block: {
      std::vector<double> values(n.blocks.size());
      std::vector<double> scratch;
      for (std::size_t b = 0; b < n.blocks.size(); ++b) {
        scratch.clear();
        for (std::size_t i : n.blocks[b]) scratch.push_back(x[i]);
        values[b] = n.children[b + 1].eval(scratch);
      }
      return n.children[0].eval(values);
    }
    case NormKind::Remark2Wrap: {
      std::vector<double> plus(x.size()), minus(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        plus[i] = std::max(0.0, x[i]);
        minus[i] = std::max(0.0, -x[i]);
      }
      const NormOracle& base = n.children[0];
      return std::max(base.eval(plus), base.eval(minus));
    }
    case NormKind::Custom:
      return n.fn(x);
  }
  return 0.0;
}

double NormOracle::q() const {
  if (node_->kind != NormKind::Lq && node_->kind != NormKind::WeightedLq) {
    throw std::logic_error("NormOracle::q on a norm without exponent");
  }
  return node_->q;
}

std::span<const double> NormOracle::weights() const {
  if (node_->kind != NormKind::WeightedLq) throw std::logic_error("NormOracle::weights");
  return node_->weights;
}

const NormOracle& NormOracle::outer() const {
  if (node_->kind != NormKind::Block) throw std::logic_error("NormOracle::outer");
  return node_->children.front();
}

const std::vector<std::vector<std::size_t>>& NormOracle::blocks() const {
  if (node_->kind != NormKind::Block) throw std::logic_error("NormOracle::blocks");
  return node_->blocks;
}

std::span<const NormOracle> NormOracle::inner() const {
  if (node_->kind != NormKind::Block) throw std::logic_error("NormOracle::inner");
  return std::span<const NormOracle>(node_->children).subspan(1);
}

const NormOracle& NormOracle::base() const {
  if (node_->kind != NormKind::Remark2Wrap) throw std::logic_error("NormOracle::base");
  return node_->children.front();
}

const std::string& NormOracle::custom_name() const {
  if (node_->kind != NormKind::Custom) throw std::logic_error("NormOracle::custom_name");
  return node_->name;
}

std::string NormOracle::describe() const {
  const Node& n = *node_;
  switch (n.kind) {
    case NormKind::Lq:
      return "Lq(" + format_q(n.q) + ")";
    case NormKind::WeightedLq:
      return "WeightedLq(" + format_q(n.q) + ")";
    case NormKind::Block: {
      std::string s = "Block(" + n.children[0].describe() + ";";
      const std::string first = n.children[1].describe();
      const bool uniform = std::all_of(n.children.begin() + 1, n.children.end(),
                                       [&](const NormOracle& c) { return c.describe() == first; });
      if (uniform) {
        s += " " + first + " x" + std::to_string(n.blocks.size());
      } else {
        for (std::size_t k = 1; k < n.children.size(); ++k) s += " " + n.children[k].describe();
      }
      return s + ")";
    }
    case NormKind::Remark2Wrap:
      return "Remark2Wrap(" + n.children[0].describe() + ")";
    case NormKind::Custom:
      return "Custom(" + n.name + ")";
  }
  return "?";
}

double eval_norm(const NormOracle& n, const LatticeVector& x) {
  require_same_dim(n.dim(), x.dim());
  return n.eval(x.coords());
}

double remark2_norm(const NormOracle& n, const LatticeVector& x) {
  require_same_dim(n.dim(), x.dim());
  return std::max(n.eval(pos_part(x).coords()), n.eval(neg_part(x).coords()));
}

NormAuditReport audit_norm_axioms(const NormOracle& n, std::uint64_t sample_count,
                                  std::uint64_t seed, double tol) {
  if (sample_count == 0) throw std::invalid_argument("audit_norm_axioms: sample_count >= 1");
  NormAuditReport r;
  r.samples = sample_count;
  r.seed = seed;
  r.tol = tol;
  r.declared_lattice_constant = n.lattice_constant();

  const std::size_t dim = n.dim();
  auto fail = [&r](const std::string& what) {
    if (r.first_failure.empty()) r.first_failure = what;
  };

  const double at_zero = n.eval(std::vector<double>(dim, 0.0));
  if (at_zero != 0.0) {
    r.zero_ok = false;
    fail("norm of zero is " + std::to_string(at_zero));
  }

  // NaN counts as an unbounded violation
  auto worsen = [](double& slot, double v) { slot = std::isnan(v) ? kInfinity : std::max(slot, v); };

  const double big_k = r.declared_lattice_constant;
  Rng rng(seed);
  auto draw = [&]() {
    const auto atoms = rng.coin(0.25) ? sample_support(rng, dim, dim)
                                      : sample_support(rng, dim, std::max<std::size_t>(1, dim / 2));
    return sample_on_atoms(rng, dim, atoms, sample_shape(rng));
  };

  for (std::uint64_t s = 0; s < sample_count; ++s) {
    const LatticeVector x = draw();
    const LatticeVector y = draw();
    const double nx = n.eval(x.coords());
    const double ny = n.eval(y.coords());
    if (!(nx > 0.0) || !std::isfinite(nx)) {
      ++r.positivity_violations;
      fail("nonpositive norm " + std::to_string(nx) + " at a nonzero vector");
      continue;
    }

    const double lambda = (rng.coin() ? -1.0 : 1.0) * std::exp(rng.uniform(-3.0, 3.0));
    const double nlx = n.eval((lambda * x).coords());
    const double hom = std::fabs(nlx - std::fabs(lambda) * nx) / (std::fabs(lambda) * nx);
    worsen(r.worst_homogeneity, hom);

    if (ny > 0.0 && std::isfinite(ny)) {
      const double nxy = n.eval((x + y).coords());
      worsen(r.worst_triangle, (nxy - nx - ny) / (nx + ny));
    }

    std::vector<double> shrunk(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const double f = rng.coin(0.2) ? 1.0 : rng.uniform();
      shrunk[i] = (rng.coin() ? -1.0 : 1.0) * f * x[i];
    }
    const double nshr = n.eval(shrunk);
    worsen(r.empirical_lattice_constant, nshr / nx);
    worsen(r.worst_monotonicity, (nshr - big_k * nx) / (big_k * nx));
  }

  if (r.worst_homogeneity > tol) fail("homogeneity violated");
  if (r.worst_triangle > tol) fail("triangle inequality violated");
  if (r.worst_monotonicity > tol) fail("lattice monotonicity violated");
  r.pass = r.zero_ok && r.positivity_violations == 0 && r.worst_homogeneity <= tol &&
           r.worst_triangle <= tol && r.worst_monotonicity <= tol;
  return r;
}

}  // namespace ukk
