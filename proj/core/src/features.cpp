#include "netgames/features.hpp"

#include <string>

#include "netgames/error.hpp"

namespace netgames {

std::string_view to_string(FeatureMode m) noexcept {
  switch (m) {
    case FeatureMode::Victories: return "victories";
    case FeatureMode::DurationsHist: return "durations";
    case FeatureMode::DurationsMoments: return "moments";
    case FeatureMode::Combined: return "combined";
  }
  return "?";
}

FeatureMode parse_feature_mode(std::string_view name) {
  if (name == "victories") return FeatureMode::Victories;
  if (name == "durations" || name == "durations_hist") return FeatureMode::DurationsHist;
  if (name == "moments" || name == "durations_moments") return FeatureMode::DurationsMoments;
  if (name == "combined") return FeatureMode::Combined;
  throw InvalidParameter("unknown feature mode '" + std::string(name) +
                         "' (expected victories, durations, moments, combined)");
}

bool uses_durations(FeatureMode m) noexcept { return m != FeatureMode::Victories; }

FeatureMatrix raw_features(std::span<const SweepCase> cases, FeatureMode mode, std::size_t bins) {
  if (cases.empty()) {
    throw InvalidInput("feature_pipeline: no cases");
  }
  std::vector<std::string> labels;
  std::vector<std::vector<std::uint64_t>> finished;
  for (const auto& c : cases) {
    labels.push_back(c.label());
    if (uses_durations(mode)) {
      finished.push_back(c.stats.finished_durations());
      if (finished.back().empty()) {
        throw InvalidInput("feature_pipeline: case " + c.label() +
                           " has no finished runs; drop censored cases first");
      }
    }
  }

  switch (mode) {
    case FeatureMode::Victories: {
      FeatureMatrix m(std::move(labels), 3);
      for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& s = cases[i].stats;
        m.at(i, 0) = s.pct_win_a;
        m.at(i, 1) = s.pct_tie;
        m.at(i, 2) = s.pct_win_b;
      }
      return m;
    }
    case FeatureMode::DurationsHist: {
      const auto edges = pooled_edges(finished, bins);
      FeatureMatrix m(std::move(labels), bins);
      for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto h = make_histogram(finished[i], edges);
        for (std::size_t b = 0; b < bins; ++b) m.at(i, b) = h.normalized[b];
      }
      return m;
    }
    case FeatureMode::DurationsMoments: {
      FeatureMatrix m(std::move(labels), 2);
      for (std::size_t i = 0; i < cases.size(); ++i) {
        m.at(i, 0) = cases[i].stats.duration_mean;
        m.at(i, 1) = cases[i].stats.duration_std;
      }
      return m;
    }
    case FeatureMode::Combined: {
      FeatureMatrix m(std::move(labels), 5);
      for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& s = cases[i].stats;
        m.at(i, 0) = s.pct_win_a;
        m.at(i, 1) = s.pct_tie;
        m.at(i, 2) = s.pct_win_b;
        m.at(i, 3) = s.duration_mean;
        m.at(i, 4) = s.duration_std;
      }
      return m;
    }
  }
  throw InvalidParameter("feature_pipeline: unknown mode");
}

FeatureMatrix feature_pipeline(std::span<const SweepCase> cases, FeatureMode mode,
                               const FeatureOptions& options) {
  FeatureMatrix m = raw_features(cases, mode, options.bins);
  if (options.drop_constant_columns) {
    const auto constant = constant_columns(m);
    if (constant.size() == m.cols()) {
      throw InvalidInput("feature_pipeline: every feature column is constant");
    }
    m = m.drop_columns(constant);
  }
  return normalize(m, options.normalization, options.shift_offset);
}

}  // namespace netgames
