#include "netgames/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

namespace netgames {

void OutcomeCounts::add(GameResult r) noexcept {
  switch (r) {
    case GameResult::WinA: ++win_a; break;
    case GameResult::Tie: ++tie; break;
    case GameResult::WinB: ++win_b; break;
    case GameResult::Censored: ++censored; break;
  }
}

std::vector<std::uint64_t> BatchStats::finished_durations() const {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < durations.size(); ++i) {
    if (results[i] != GameResult::Censored) out.push_back(durations[i]);
  }
  return out;
}

namespace {

bool same_bits(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

}  // namespace

bool operator==(const BatchStats& lhs, const BatchStats& rhs) {
  return lhs.runs == rhs.runs && lhs.counts == rhs.counts && lhs.durations == rhs.durations &&
         lhs.results == rhs.results && same_bits(lhs.pct_win_a, rhs.pct_win_a) &&
         same_bits(lhs.pct_tie, rhs.pct_tie) && same_bits(lhs.pct_win_b, rhs.pct_win_b) &&
         same_bits(lhs.pct_censored, rhs.pct_censored) &&
         same_bits(lhs.duration_mean, rhs.duration_mean) &&
         same_bits(lhs.duration_std, rhs.duration_std);
}

BatchStats aggregate(std::span<const GameOutcome> outcomes) {
  BatchStats s;
  s.runs = outcomes.size();
  s.durations.reserve(outcomes.size());
  s.results.reserve(outcomes.size());

  // Welford, in replica order.
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t n = 0;
  for (const auto& o : outcomes) {
    s.counts.add(o.result);
    s.durations.push_back(o.duration);
    s.results.push_back(o.result);
    if (o.result == GameResult::Censored) continue;
    ++n;
    const double x = static_cast<double>(o.duration);
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  if (n > 0) {
    s.duration_mean = mean;
    s.duration_std = std::sqrt(m2 / static_cast<double>(n));
  } else {
    s.duration_mean = s.duration_std = std::numeric_limits<double>::quiet_NaN();
  }

  if (s.runs > 0) {
    const double scale = 100.0 / static_cast<double>(s.runs);
    s.pct_win_a = scale * static_cast<double>(s.counts.win_a);
    s.pct_tie = scale * static_cast<double>(s.counts.tie);
    s.pct_win_b = scale * static_cast<double>(s.counts.win_b);
    s.pct_censored = scale * static_cast<double>(s.counts.censored);
  }
  return s;
}

ReplicaError::ReplicaError(std::size_t replica, const std::string& what)
    : Error("replica " + std::to_string(replica) + ": " + what), replica_(replica) {}

std::size_t default_workers() {
  if (const char* env = std::getenv("NETGAMES_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

BatchStats run_batch(const Graph& graph, const GameConfig& config, std::size_t runs,
                     std::uint64_t base_seed, const BatchOptions& options) {
  if (runs == 0) {
    throw InvalidParameter("run_batch: runs must be >= 1");
  }
  validate(config);

  std::vector<GameOutcome> outcomes(runs);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::size_t error_replica = runs;
  std::string error_what;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t k = next.fetch_add(1);
      if (k >= runs) return;
      try {
        GameConfig replica = config;
        replica.seed = derive_seed(base_seed, k);
        if (options.resample) {
          const Graph g = generate(*options.resample, derive_seed(base_seed + kResampleStream, k));
          outcomes[k] = run_game(g, replica);
        } else {
          outcomes[k] = run_game(graph, replica);
        }
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        // Report the lowest failing index so the error is schedule-independent.
        if (k < error_replica) {
          error_replica = k;
          error_what = e.what();
        }
        failed = true;
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, runs);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failed) {
    throw ReplicaError(error_replica, error_what);
  }
  return aggregate(outcomes);
}

// ---------------------------------------------------------------------------

Histogram make_histogram(std::span<const std::uint64_t> values, std::span<const double> bin_edges) {
  if (bin_edges.size() < 2) {
    throw InvalidParameter("make_histogram: need at least two bin edges");
  }
  for (std::size_t i = 1; i < bin_edges.size(); ++i) {
    if (!(bin_edges[i] > bin_edges[i - 1])) {
      throw InvalidParameter("make_histogram: bin edges must be strictly increasing");
    }
  }
  Histogram h;
  h.bin_edges.assign(bin_edges.begin(), bin_edges.end());
  const std::size_t bins = bin_edges.size() - 1;
  h.counts.assign(bins, 0);
  h.normalized.assign(bins, 0.0);
  for (std::uint64_t v : values) {
    const double x = static_cast<double>(v);
    if (x < bin_edges.front() || x > bin_edges.back()) {
      throw RangeError("make_histogram: value " + std::to_string(v) + " outside [" +
                       std::to_string(bin_edges.front()) + ", " +
                       std::to_string(bin_edges.back()) + "]");
    }
    auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), x);
    std::size_t bin = static_cast<std::size_t>(it - bin_edges.begin()) - 1;
    if (bin >= bins) bin = bins - 1;  // x == last edge
    ++h.counts[bin];
  }
  if (!values.empty()) {
    const auto total = static_cast<double>(values.size());
    for (std::size_t i = 0; i < bins; ++i) {
      h.normalized[i] = static_cast<double>(h.counts[i]) / total;
    }
  }
  return h;
}

std::vector<double> linear_edges(double lo, double hi, std::size_t bins) {
  if (bins == 0) {
    throw InvalidParameter("linear_edges: bins must be >= 1");
  }
  if (!(hi >= lo)) {
    throw InvalidParameter("linear_edges: hi < lo");
  }
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  std::vector<double> edges(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i <= bins; ++i) {
    edges[i] = lo + width * static_cast<double>(i);
  }
  edges.back() = hi;
  return edges;
}

std::vector<double> pooled_edges(std::span<const std::vector<std::uint64_t>> samples,
                                 std::size_t bins) {
  bool any = false;
  std::uint64_t lo = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t hi = 0;
  for (const auto& s : samples) {
    for (std::uint64_t v : s) {
      any = true;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!any) {
    throw InvalidInput("pooled_edges: no values to bin");
  }
  return linear_edges(static_cast<double>(lo), static_cast<double>(hi), bins);
}

// ---------------------------------------------------------------------------

std::string SweepCase::label() const {
  return std::string(to_string(game)) + "/" + std::string(to_string(topology.kind));
}

std::uint64_t sweep_graph_seed(std::uint64_t base_seed, TopologyKind kind) {
  return derive_seed(base_seed, kGraphStream + static_cast<std::uint64_t>(kind));
}

std::uint64_t sweep_batch_seed(std::uint64_t base_seed, GameKind game, TopologyKind kind) {
  return derive_seed(base_seed, kCaseStream + 16 * static_cast<std::uint64_t>(game) +
                                    static_cast<std::uint64_t>(kind));
}

std::vector<SweepCase> sweep(std::span<const TopologySpec> topologies,
                             std::span<const GameKind> games, const SweepOptions& options) {
  if (topologies.empty() || games.empty()) {
    throw InvalidParameter("sweep: need at least one topology and one game");
  }
  std::vector<Graph> graphs;
  std::vector<std::uint64_t> graph_seeds;
  for (const auto& t : topologies) {
    graph_seeds.push_back(sweep_graph_seed(options.base_seed, t.kind));
    graphs.push_back(generate(t, graph_seeds.back()));
  }

  std::vector<SweepCase> cases;
  for (GameKind game : games) {
    for (std::size_t i = 0; i < topologies.size(); ++i) {
      SweepCase c;
      c.game = game;
      c.topology = topologies[i];
      c.graph_seed = graph_seeds[i];
      c.batch_seed = sweep_batch_seed(options.base_seed, game, topologies[i].kind);
      c.average_degree = graphs[i].average_degree();

      GameConfig config;
      config.game = game;
      config.proximity = options.proximity;
      config.players_per_team = options.players_per_team;
      config.max_iterations = options.max_iterations;
      config.skip_absorbed = options.skip_absorbed;

      BatchOptions batch;
      batch.workers = options.workers;
      if (options.resample_per_run) batch.resample = topologies[i];
      c.stats = run_batch(graphs[i], config, options.runs, c.batch_seed, batch);
      cases.push_back(std::move(c));
    }
  }
  return cases;
}

}  // namespace netgames
