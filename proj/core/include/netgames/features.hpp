#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "netgames/montecarlo.hpp"
#include "netgames/simnet.hpp"

namespace netgames {

/// Victories: [p_A, p_tie, p_B].
/// DurationsHist: normalized histogram of finished durations over bins shared
///   by all cases (pooled min..max).
/// DurationsMoments: [duration_mean, duration_std].
/// Combined: [p_A, p_tie, p_B, duration_mean, duration_std].
enum class FeatureMode : std::uint8_t { Victories, DurationsHist, DurationsMoments, Combined };

std::string_view to_string(FeatureMode m) noexcept;
/// Accepts "victories", "durations" / "durations_hist", "moments" /
/// "durations_moments", "combined".
FeatureMode parse_feature_mode(std::string_view name);

/// True for modes whose features are built from durations.
bool uses_durations(FeatureMode m) noexcept;

struct FeatureOptions {
  std::size_t bins = 50;
  Normalization normalization = Normalization::Standardized;
  double shift_offset = 1.0;
  /// Remove zero-variance columns before normalizing (histogram bins that
  /// are empty for every case are the usual culprit).
  bool drop_constant_columns = false;
};

/// Raw features of each case, one row per case labelled SweepCase::label(),
/// then normalized per `options`. Throws InvalidInput when a duration mode
/// meets a case without finished runs (callers drop censored cases first),
/// and propagates zero-variance errors from standardize.
FeatureMatrix feature_pipeline(std::span<const SweepCase> cases, FeatureMode mode,
                               const FeatureOptions& options = {});

/// Same without normalization.
FeatureMatrix raw_features(std::span<const SweepCase> cases, FeatureMode mode, std::size_t bins = 50);

}  // namespace netgames
