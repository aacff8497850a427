#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netgames/engine.hpp"
#include "netgames/error.hpp"
#include "netgames/graphgen.hpp"

namespace netgames {

struct OutcomeCounts {
  std::uint64_t win_a = 0;
  std::uint64_t tie = 0;
  std::uint64_t win_b = 0;
  std::uint64_t censored = 0;

  [[nodiscard]] std::uint64_t total() const noexcept { return win_a + tie + win_b + censored; }
  void add(GameResult r) noexcept;

  friend bool operator==(const OutcomeCounts&, const OutcomeCounts&) = default;
};

/// Aggregate of one batch of replicas. `durations` and `results` are in
/// replica order; mean and std cover finished (non-censored) replicas only
/// and are NaN when every replica was censored.
struct BatchStats {
  std::size_t runs = 0;
  OutcomeCounts counts;
  double pct_win_a = 0.0;
  double pct_tie = 0.0;
  double pct_win_b = 0.0;
  double pct_censored = 0.0;
  std::vector<std::uint64_t> durations;
  std::vector<GameResult> results;
  double duration_mean = 0.0;
  double duration_std = 0.0;  // population

  /// Durations of finished replicas, in replica order.
  [[nodiscard]] std::vector<std::uint64_t> finished_durations() const;

  /// Bitwise equality (NaN == NaN).
  friend bool operator==(const BatchStats& lhs, const BatchStats& rhs);
};

/// Builds BatchStats from per-replica outcomes (in replica order).
BatchStats aggregate(std::span<const GameOutcome> outcomes);

/// Raised when a replica fails; carries the replica index.
class ReplicaError : public Error {
 public:
  ReplicaError(std::size_t replica, const std::string& what);
  [[nodiscard]] std::size_t replica() const noexcept { return replica_; }

 private:
  std::size_t replica_;
};

// Sub-stream ids fed to derive_seed. Replica k of a batch uses
// derive_seed(batch_seed, k); graphs and sweep cases use the offsets below.
inline constexpr std::uint64_t kGraphStream = 1ULL << 32;
inline constexpr std::uint64_t kResampleStream = 2ULL << 32;
inline constexpr std::uint64_t kCaseStream = 3ULL << 32;

struct BatchOptions {
  std::size_t workers = 1;
  /// When set, replica k plays on generate(*resample, derive_seed(base_seed
  /// + kResampleStream, k)) instead of the shared graph.
  std::optional<TopologySpec> resample;
};

/// Runs `runs` replicas of `config` (config.seed is ignored; replica k is
/// seeded with derive_seed(base_seed, k)). Output does not depend on the
/// worker count or on scheduling.
BatchStats run_batch(const Graph& graph, const GameConfig& config, std::size_t runs,
                     std::uint64_t base_seed, const BatchOptions& options = {});

/// Default worker count: $NETGAMES_WORKERS if set and positive, otherwise
/// the hardware concurrency (at least 1).
std::size_t default_workers();

// ---------------------------------------------------------------------------

struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::uint64_t> counts;
  std::vector<double> normalized;
};

/// Bins are [e_i, e_{i+1}) except the last, which is closed. Throws
/// RangeError naming the first value outside [e_0, e_last] and
/// InvalidParameter unless the edges are strictly increasing (>= 2 edges).
Histogram make_histogram(std::span<const std::uint64_t> values, std::span<const double> bin_edges);

/// `bins` equal-width bins spanning [lo, hi]; a degenerate range is widened
/// to [lo - 0.5, hi + 0.5].
std::vector<double> linear_edges(double lo, double hi, std::size_t bins);

/// linear_edges over the pooled min..max of every sample. Throws
/// InvalidInput when all samples are empty.
std::vector<double> pooled_edges(std::span<const std::vector<std::uint64_t>> samples,
                                 std::size_t bins);

// ---------------------------------------------------------------------------

struct SweepOptions {
  std::size_t runs = 10'000;
  std::uint64_t base_seed = 1;
  std::size_t players_per_team = 10;
  std::uint64_t max_iterations = 1'000'000;
  ProximityRule proximity = ProximityRule::Adjacent;
  bool skip_absorbed = true;
  std::size_t workers = 1;
  bool resample_per_run = false;
};

struct SweepCase {
  GameKind game = GameKind::G1;
  TopologySpec topology;
  std::uint64_t graph_seed = 0;
  std::uint64_t batch_seed = 0;
  double average_degree = 0.0;
  BatchStats stats;

  /// "G2/REG"
  [[nodiscard]] std::string label() const;
};

/// Seed of the shared graph for a topology in a sweep.
std::uint64_t sweep_graph_seed(std::uint64_t base_seed, TopologyKind kind);
/// Batch seed of one (game, topology) cell of a sweep.
std::uint64_t sweep_batch_seed(std::uint64_t base_seed, GameKind game, TopologyKind kind);

/// One BatchStats per (game, topology), ordered by game then topology. Each
/// topology's graph is generated once from sweep_graph_seed and shared by
/// every game (unless resample_per_run). Seeds depend only on the cell, so
/// a sub-sweep reproduces the matching rows of a full sweep.
std::vector<SweepCase> sweep(std::span<const TopologySpec> topologies,
                             std::span<const GameKind> games, const SweepOptions& options);

}  // namespace netgames
