#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netgames/engine.hpp"
#include "netgames/graph.hpp"
#include "netgames/montecarlo.hpp"
#include "netgames/simnet.hpp"

// Text formats. Every writer is locale-independent and deterministic, so the
// same inputs always produce byte-identical output.
namespace netgames::io {

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Fixed-point with `precision` decimals; "nan" / "inf" / "-inf" otherwise.
std::string fixed(double value, int precision = 6);

// --- graphs ---------------------------------------------------------------

/// {"n": N, "edges": [[i, j], ...], "positions": [[x, y], ...]} with edges
/// sorted and i < j; "positions" only when the graph has them.
std::string graph_to_json(const Graph& g);
/// Throws InvalidInput on malformed documents or invalid graphs.
Graph graph_from_json(std::string_view text);

// --- batches and sweeps ---------------------------------------------------

/// Per-batch results document: {config, runs, outcome_counts, percentages,
/// duration_mean, duration_std, outcomes, durations}. `outcomes` is a string
/// with one letter per replica (A, B, T, C).
std::string batch_to_json(const BatchStats& stats, const GameConfig& config,
                          std::uint64_t base_seed, std::string_view graph_source);

struct SweepResults {
  SweepOptions options;
  std::vector<SweepCase> cases;
};

/// {"settings": {...}, "cases": [{game, topology, ..., outcomes, durations}]}
std::string sweep_to_json(std::span<const SweepCase> cases, const SweepOptions& options);
/// Rebuilds the cases (statistics are re-aggregated from the stored
/// outcomes). Throws InvalidInput on malformed documents.
SweepResults sweep_from_json(std::string_view text);

/// Grid with one row per game and one column per topology present; each cell is
/// "p_A/p_tie/p_B/p_cens" in percent with two decimals.
std::string summary_grid_csv(std::span<const SweepCase> cases);
/// One row per case with all statistics.
std::string summary_long_csv(std::span<const SweepCase> cases);
/// "replica,outcome,duration" rows; outcome is win_a, tie, win_b or censored.
std::string durations_csv(const BatchStats& stats);
/// One-line human summary of a batch.
std::string summary_line(const BatchStats& stats);

/// Minimal standalone SVG bar chart of a histogram.
std::string histogram_svg(const Histogram& h, std::string_view title);

// --- similarity networks --------------------------------------------------

/// "label_i,label_j,weight" for every retained pair, label_i < label_j,
/// rows sorted, weights with 6 decimals.
std::string network_csv(const SimilarityNetwork& net);
/// {labels, D, regularization, threshold, weights (full matrix)}.
std::string network_json(const SimilarityNetwork& net);

// --- traces ---------------------------------------------------------------

/// One JSON object (no trailing newline) describing a step.
std::string trace_line(const GameState& after, const StepRecord& record);

}  // namespace netgames::io
