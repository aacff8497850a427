#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace netgames {

enum class Normalization : std::uint8_t { Raw, Standardized, StandardizedRecentered, Shifted };

std::string_view to_string(Normalization n) noexcept;
Normalization parse_normalization(std::string_view name);

/// N labeled rows of M real features, stored row-major.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::vector<std::string> labels, std::size_t cols,
                Normalization normalization = Normalization::Raw);

  [[nodiscard]] std::size_t rows() const noexcept { return labels_.size(); }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  double& at(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  [[nodiscard]] double at(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  [[nodiscard]] std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  [[nodiscard]] std::vector<double> column(std::size_t c) const;

  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] Normalization normalization() const noexcept { return normalization_; }
  void set_normalization(Normalization n) noexcept { normalization_ = n; }

  /// Column means and population standard deviations.
  [[nodiscard]] std::vector<double> column_means() const;
  [[nodiscard]] std::vector<double> column_stddevs() const;

  /// Copy without the listed columns (indices must be valid, any order).
  [[nodiscard]] FeatureMatrix drop_columns(std::span<const std::size_t> columns) const;
  /// Copy restricted to the listed rows, in the given order.
  [[nodiscard]] FeatureMatrix select_rows(std::span<const std::size_t> rows) const;

 private:
  std::vector<std::string> labels_;
  std::size_t cols_ = 0;
  std::vector<double> values_;
  Normalization normalization_ = Normalization::Raw;
};

/// Indices of columns with zero population standard deviation.
std::vector<std::size_t> constant_columns(const FeatureMatrix& m);

/// Per-column z-scores with the population standard deviation.
/// Throws InvalidInput naming the first zero-variance column.
FeatureMatrix standardize(const FeatureMatrix& m);

/// Adds `means[j]` to column j of a standardized matrix.
FeatureMatrix recenter(const FeatureMatrix& standardized, std::span<const double> means);

/// Adds the same constant to every entry of a standardized matrix.
FeatureMatrix shift(const FeatureMatrix& standardized, double offset);

/// Applies `target` normalization to a raw matrix (`offset` is used by Shifted).
FeatureMatrix normalize(const FeatureMatrix& raw, Normalization target, double offset = 1.0);

// Signed multiset indices. Each vector is split into its positive part and
// the absolute value of its negative part; the common mass is
//   S(v, r) = sum_i min(v_i^+, r_i^+) + min(v_i^-, r_i^-).

/// S(v, r) / sum_i [max(v_i^+, r_i^+) + max(v_i^-, r_i^-)].
/// Throws UndefinedSimilarity when both vectors are zero, InvalidInput on
/// length mismatch.
double jaccard_signed(std::span<const double> v, std::span<const double> r);

/// S(v, r) / min(sum_i |v_i|, sum_i |r_i|).
/// Throws UndefinedSimilarity when either vector is zero.
double interiority_signed(std::span<const double> v, std::span<const double> r);

/// J_c(v, r)^strictness * I(v, r), where J_c adds `regularization` to both
/// the numerator and denominator of the Jaccard ratio.
double coincidence(std::span<const double> v, std::span<const double> r, double strictness,
                   double regularization = 0.0);

/// Complete weighted graph of pairwise coincidences. Weights below
/// `threshold` are pruned to 0; the diagonal is 0.
class SimilarityNetwork {
 public:
  SimilarityNetwork(std::vector<std::string> labels, double strictness, double regularization,
                    double threshold);

  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] double weight(std::size_t i, std::size_t j) const { return weights_[i * size() + j]; }
  void set_weight(std::size_t i, std::size_t j, double w);

  /// True when the pair survived pruning.
  [[nodiscard]] bool has_edge(std::size_t i, std::size_t j) const;

  [[nodiscard]] double strictness() const noexcept { return strictness_; }
  [[nodiscard]] double regularization() const noexcept { return regularization_; }
  [[nodiscard]] double threshold() const noexcept { return threshold_; }

 private:
  std::vector<std::string> labels_;
  std::vector<double> weights_;
  double strictness_;
  double regularization_;
  double threshold_;
};

/// Throws UndefinedSimilarity naming the pair if a coincidence is undefined,
/// InvalidParameter for N < 2, strictness <= 0, negative regularization, or
/// a threshold outside [0, 1].
SimilarityNetwork build_similarity_network(const FeatureMatrix& m, double strictness,
                                           double regularization = 0.0, double threshold = 0.0);

}  // namespace netgames
