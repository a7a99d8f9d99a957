#include "contain/icm.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "contain/errors.hpp"

namespace contain {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

__extension__ using uint128 = unsigned __int128;

// Integer moments merge exactly, so the estimate does not depend on how trials are split.
struct Moments {
  std::uint64_t count = 0;
  std::uint64_t sum = 0;
  uint128 sum_sq = 0;

  void add(std::uint64_t x) {
    ++count;
    sum += x;
    sum_sq += static_cast<uint128>(x) * x;
  }
  void merge(const Moments& o) {
    count += o.count;
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
};

class Cascade {
 public:
  Cascade(const Graph& g, const NodeSet& seeds, const NodeSet& immunized, const CascadeConfig& cfg)
      : g_(g), cfg_(cfg), blocked_(g.num_nodes(), 0), active_(g.num_nodes(), 0) {
    for (NodeId v : immunized) blocked_[v] = 1;
    for (NodeId s : seeds) {
      if (!blocked_[s]) sources_.push_back(s);
    }
    frontier_.reserve(g.num_nodes());
  }

  std::size_t run(std::size_t trial) {
    frontier_.clear();
    for (NodeId s : sources_) {
      active_[s] = 1;
      frontier_.push_back(s);
    }
    // Breadth-first order; each active node tries each inactive neighbour once.
    for (std::size_t head = 0; head < frontier_.size(); ++head) {
      const NodeId v = frontier_[head];
      for (const Neighbor& nb : g_.neighbors(v)) {
        if (active_[nb.node] || blocked_[nb.node]) continue;
        const double p = cfg_.weights_as_probabilities ? std::clamp(nb.weight, 0.0, 1.0) : cfg_.p;
        if (edge_coin(cfg_.rng_seed, trial, nb.edge) < p) {
          active_[nb.node] = 1;
          frontier_.push_back(nb.node);
        }
      }
    }
    const std::size_t infected = frontier_.size();
    for (NodeId v : frontier_) active_[v] = 0;
    return infected;
  }

 private:
  const Graph& g_;
  const CascadeConfig& cfg_;
  std::vector<char> blocked_;
  std::vector<char> active_;
  std::vector<NodeId> sources_;
  std::vector<NodeId> frontier_;
};

}  // namespace

void CascadeConfig::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("activation probability must lie in [0, 1]");
  if (trials < 1) throw DomainError("at least one trial is required");
}

double edge_coin(std::uint64_t rng_seed, std::size_t trial, EdgeId edge) {
  std::uint64_t h = splitmix64(rng_seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(trial));
  h = splitmix64(h ^ (static_cast<std::uint64_t>(edge) << 1));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::size_t simulate_trial(const Graph& g, const NodeSet& seeds, const NodeSet& immunized, const CascadeConfig& cfg,
                           std::size_t trial) {
  cfg.validate();
  seeds.validate(g);
  immunized.validate(g);
  Cascade cascade(g, seeds, immunized, cfg);
  return cascade.run(trial);
}

SpreadEstimate simulate(const Graph& g, const NodeSet& seeds, const NodeSet& immunized, const CascadeConfig& cfg) {
  cfg.validate();
  seeds.validate(g);
  immunized.validate(g);

  std::size_t workers = cfg.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : cfg.threads;
  workers = std::min(workers, cfg.trials);
  std::vector<Moments> partial(workers);
  auto work = [&](std::size_t w) {
    Cascade cascade(g, seeds, immunized, cfg);
    for (std::size_t t = w; t < cfg.trials; t += workers) partial[w].add(cascade.run(t));
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  Moments total;
  for (const auto& m : partial) total.merge(m);
  SpreadEstimate est;
  est.trials = cfg.trials;
  const double count = static_cast<double>(total.count);
  est.mean_infected = static_cast<double>(total.sum) / count;
  if (total.count > 1) {
    // T * sum(x^2) - sum(x)^2, exact in 128-bit.
    const uint128 scaled = static_cast<uint128>(total.count) * total.sum_sq -
                            static_cast<uint128>(total.sum) * total.sum;
    est.std_infected = std::sqrt(static_cast<double>(scaled) / (count * (count - 1.0)));
  }
  return est;
}

double saved_nodes(const Graph& g, const NodeSet& seeds, const NodeSet& immunized, const CascadeConfig& cfg) {
  const SpreadEstimate baseline = simulate(g, seeds, NodeSet{}, cfg);
  const SpreadEstimate treated = simulate(g, seeds, immunized, cfg);
  return baseline.mean_infected - treated.mean_infected;
}

}  // namespace contain
