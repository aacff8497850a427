#include "netgames/simnet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "netgames/error.hpp"

namespace netgames {

std::string_view to_string(Normalization n) noexcept {
  switch (n) {
    case Normalization::Raw: return "raw";
    case Normalization::Standardized: return "standardized";
    case Normalization::StandardizedRecentered: return "recentered";
    case Normalization::Shifted: return "shifted";
  }
  return "?";
}

Normalization parse_normalization(std::string_view name) {
  if (name == "raw") return Normalization::Raw;
  if (name == "standardized") return Normalization::Standardized;
  if (name == "recentered") return Normalization::StandardizedRecentered;
  if (name == "shifted") return Normalization::Shifted;
  throw InvalidParameter("unknown normalization '" + std::string(name) +
                         "' (expected raw, standardized, recentered, shifted)");
}

FeatureMatrix::FeatureMatrix(std::vector<std::string> labels, std::size_t cols,
                             Normalization normalization)
    : labels_(std::move(labels)),
      cols_(cols),
      values_(labels_.size() * cols, 0.0),
      normalization_(normalization) {}

std::vector<double> FeatureMatrix::column(std::size_t c) const {
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
  return out;
}

std::vector<double> FeatureMatrix::column_means() const {
  std::vector<double> means(cols_, 0.0);
  for (std::size_t c = 0; c < cols_; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < rows(); ++r) sum += at(r, c);
    means[c] = rows() ? sum / static_cast<double>(rows()) : 0.0;
  }
  return means;
}

std::vector<double> FeatureMatrix::column_stddevs() const {
  const auto means = column_means();
  std::vector<double> sd(cols_, 0.0);
  for (std::size_t c = 0; c < cols_; ++c) {
    double ss = 0.0;
    for (std::size_t r = 0; r < rows(); ++r) {
      const double d = at(r, c) - means[c];
      ss += d * d;
    }
    sd[c] = rows() ? std::sqrt(ss / static_cast<double>(rows())) : 0.0;
  }
  return sd;
}

FeatureMatrix FeatureMatrix::drop_columns(std::span<const std::size_t> columns) const {
  std::vector<char> drop(cols_, 0);
  for (auto c : columns) {
    if (c >= cols_) throw InvalidParameter("drop_columns: column out of range");
    drop[c] = 1;
  }
  const auto kept = static_cast<std::size_t>(std::count(drop.begin(), drop.end(), 0));
  FeatureMatrix out(labels_, kept, normalization_);
  for (std::size_t r = 0; r < rows(); ++r) {
    std::size_t k = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!drop[c]) out.at(r, k++) = at(r, c);
    }
  }
  return out;
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> selected) const {
  std::vector<std::string> labels;
  for (auto r : selected) {
    if (r >= rows()) throw InvalidParameter("select_rows: row out of range");
    labels.push_back(labels_[r]);
  }
  FeatureMatrix out(std::move(labels), cols_, normalization_);
  for (std::size_t i = 0; i < selected.size(); ++i) {
    for (std::size_t c = 0; c < cols_; ++c) out.at(i, c) = at(selected[i], c);
  }
  return out;
}

std::vector<std::size_t> constant_columns(const FeatureMatrix& m) {
  std::vector<std::size_t> out;
  const auto sd = m.column_stddevs();
  for (std::size_t c = 0; c < sd.size(); ++c) {
    if (sd[c] == 0.0) out.push_back(c);
  }
  return out;
}

FeatureMatrix standardize(const FeatureMatrix& m) {
  const auto means = m.column_means();
  const auto sd = m.column_stddevs();
  for (std::size_t c = 0; c < sd.size(); ++c) {
    if (!(sd[c] > 0.0)) {
      throw InvalidInput("standardize: column " + std::to_string(c) +
                         " has zero variance; drop it first");
    }
  }
  FeatureMatrix out = m;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out.at(r, c) = (m.at(r, c) - means[c]) / sd[c];
    }
  }
  out.set_normalization(Normalization::Standardized);
  return out;
}

FeatureMatrix recenter(const FeatureMatrix& standardized, std::span<const double> means) {
  if (means.size() != standardized.cols()) {
    throw InvalidInput("recenter: expected " + std::to_string(standardized.cols()) +
                       " means, got " + std::to_string(means.size()));
  }
  FeatureMatrix out = standardized;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) out.at(r, c) += means[c];
  }
  out.set_normalization(Normalization::StandardizedRecentered);
  return out;
}

FeatureMatrix shift(const FeatureMatrix& standardized, double offset) {
  FeatureMatrix out = standardized;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) out.at(r, c) += offset;
  }
  out.set_normalization(Normalization::Shifted);
  return out;
}

FeatureMatrix normalize(const FeatureMatrix& raw, Normalization target, double offset) {
  switch (target) {
    case Normalization::Raw:
      return raw;
    case Normalization::Standardized:
      return standardize(raw);
    case Normalization::StandardizedRecentered: {
      const auto means = raw.column_means();
      return recenter(standardize(raw), means);
    }
    case Normalization::Shifted:
      return shift(standardize(raw), offset);
  }
  throw InvalidParameter("normalize: unknown normalization");
}

// ---------------------------------------------------------------------------

namespace {

struct MassSums {
  double common = 0.0;  // sum of componentwise minima
  double united = 0.0;  // sum of componentwise maxima
  double total_v = 0.0;
  double total_r = 0.0;
};

MassSums mass_sums(std::span<const double> v, std::span<const double> r) {
  if (v.size() != r.size()) {
    throw InvalidInput("similarity: vector lengths differ (" + std::to_string(v.size()) + " vs " +
                       std::to_string(r.size()) + ")");
  }
  MassSums s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double vp = std::max(v[i], 0.0), vn = std::max(-v[i], 0.0);
    const double rp = std::max(r[i], 0.0), rn = std::max(-r[i], 0.0);
    s.common += std::min(vp, rp) + std::min(vn, rn);
    s.united += std::max(vp, rp) + std::max(vn, rn);
    s.total_v += vp + vn;
    s.total_r += rp + rn;
  }
  return s;
}

double jaccard_from(const MassSums& s, double regularization) {
  if (s.united == 0.0 && regularization == 0.0) {
    throw UndefinedSimilarity("jaccard: both vectors are zero");
  }
  return (s.common + regularization) / (s.united + regularization);
}

double interiority_from(const MassSums& s) {
  const double smaller = std::min(s.total_v, s.total_r);
  if (smaller == 0.0) {
    throw UndefinedSimilarity("interiority: a vector is zero");
  }
  return s.common / smaller;
}

}  // namespace

double jaccard_signed(std::span<const double> v, std::span<const double> r) {
  return jaccard_from(mass_sums(v, r), 0.0);
}

double interiority_signed(std::span<const double> v, std::span<const double> r) {
  return interiority_from(mass_sums(v, r));
}

double coincidence(std::span<const double> v, std::span<const double> r, double strictness,
                   double regularization) {
  if (!(strictness > 0.0)) {
    throw InvalidParameter("coincidence: strictness must be positive");
  }
  if (!(regularization >= 0.0)) {
    throw InvalidParameter("coincidence: regularization must be non-negative");
  }
  const MassSums s = mass_sums(v, r);
  const double interiority = interiority_from(s);
  return std::pow(jaccard_from(s, regularization), strictness) * interiority;
}

// ---------------------------------------------------------------------------

SimilarityNetwork::SimilarityNetwork(std::vector<std::string> labels, double strictness,
                                     double regularization, double threshold)
    : labels_(std::move(labels)),
      weights_(labels_.size() * labels_.size(), 0.0),
      strictness_(strictness),
      regularization_(regularization),
      threshold_(threshold) {}

void SimilarityNetwork::set_weight(std::size_t i, std::size_t j, double w) {
  weights_[i * size() + j] = w;
  weights_[j * size() + i] = w;
}

bool SimilarityNetwork::has_edge(std::size_t i, std::size_t j) const {
  if (i == j) return false;
  // Pruned weights are stored as 0 and kept ones are >= threshold.
  return threshold_ == 0.0 || weight(i, j) > 0.0;
}

SimilarityNetwork build_similarity_network(const FeatureMatrix& m, double strictness,
                                           double regularization, double threshold) {
  if (m.rows() < 2) {
    throw InvalidParameter("build_similarity_network: need at least 2 rows");
  }
  if (!(strictness > 0.0)) {
    throw InvalidParameter("build_similarity_network: strictness must be positive");
  }
  if (!(regularization >= 0.0)) {
    throw InvalidParameter("build_similarity_network: regularization must be non-negative");
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw InvalidParameter("build_similarity_network: threshold must lie in [0, 1]");
  }
  SimilarityNetwork net(m.labels(), strictness, regularization, threshold);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.rows(); ++j) {
      double w = 0.0;
      try {
        w = coincidence(m.row(i), m.row(j), strictness, regularization);
      } catch (const UndefinedSimilarity& e) {
        throw UndefinedSimilarity("similarity between '" + m.labels()[i] + "' and '" +
                                  m.labels()[j] + "' is undefined: " + e.what());
      }
      net.set_weight(i, j, w >= threshold ? w : 0.0);
    }
  }
  return net;
}

}  // namespace netgames
