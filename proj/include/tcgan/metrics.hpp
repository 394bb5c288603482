#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tcgan/data.hpp"

namespace tcgan {

// Desk-scale feature space: the raw sample space, no embedding network.
struct FeatureSet {
  std::size_t dim = 0;
  std::vector<double> vectors;       // flat [n x dim]
  std::vector<std::size_t> labels;   // empty when unlabeled

  std::size_t size() const { return dim == 0 ? 0 : vectors.size() / dim; }
  bool labeled() const { return !labels.empty(); }
  const double* row(std::size_t i) const { return vectors.data() + i * dim; }
};

struct Moments {
  std::vector<double> mean;  // [d]
  std::vector<double> cov;   // [d x d], unbiased (n-1) normalizer
};

Moments compute_moments(const FeatureSet& set);

// Frechet distance between Gaussian fits:
// |mu_r - mu_f|^2 + tr(C_r + C_f - 2 (C_r^1/2 C_f C_r^1/2)^1/2),
// matrix square roots by symmetric eigendecomposition with negative
// eigenvalues clamped at zero.
double fid(const FeatureSet& real, const FeatureSet& fake);
double fid_from_moments(const Moments& real, const Moments& fake, std::size_t d);

// Mean over disjoint blocks of the unbiased MMD^2 estimator with kernel
// (x.y/d + 1)^3; within-set sums exclude the diagonal. block_size 0 picks
// min(n, m, 100).
double kid(const FeatureSet& real, const FeatureSet& fake,
           std::size_t block_size = 0);

// kNN-manifold precision/recall: a fake point counts as precise when it lies
// within some real point's k-th-neighbor radius; recall swaps the roles.
std::pair<double, double> precision_recall(const FeatureSet& real,
                                           const FeatureSet& fake,
                                           std::size_t k = 3);

// (mode_coverage, class_fidelity) against the dataset's ground-truth modes.
// A mode counts as covered when a fake of its class lands within
// radius_multiple * mode_sigma of its center; fidelity is the fraction of
// fakes whose nearest center over all classes belongs to the requested class.
std::pair<double, double> mode_coverage(const FeatureSet& fake,
                                        const ClassConditionalDataset& dataset,
                                        double radius_multiple = 3.0);

enum class MetricKind { fid, kid };

struct ClasswiseValues {
  std::vector<std::size_t> classes;
  std::vector<double> values;
  double mean = 0.0;
};

// Metric restricted to each class label present in both sets; unweighted mean.
ClasswiseValues classwise(MetricKind kind, const FeatureSet& real,
                          const FeatureSet& fake, std::size_t kid_block = 0);

struct MetricsReport {
  long step = 0;
  double lambda = 0.0;
  double d_total = 0.0;
  double g_total = 0.0;
  double fid = 0.0;
  double kid = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double mode_coverage = 0.0;
  double class_fidelity = 0.0;
  std::optional<ClasswiseValues> classwise_fid;
  std::optional<ClasswiseValues> classwise_kid;
};

}  // namespace tcgan
