#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "tcgan/rng.hpp"

namespace tcgan {

enum class Layout { ring, grid };

struct DatasetSpec {
  std::size_t num_classes = 8;
  std::size_t samples_per_class = 20;
  std::size_t modes_per_class = 4;
  double mode_sigma = 0.05;
  Layout layout = Layout::ring;
  std::uint64_t seed = 0;
  std::size_t dim = 2;
};

// Labeled point set with the ground-truth mode structure it was drawn from.
struct ClassConditionalDataset {
  std::size_t dim = 2;
  std::size_t num_classes = 0;
  std::size_t modes_per_class = 0;
  double mode_sigma = 0.0;
  std::vector<double> points;             // flat [n x dim]
  std::vector<std::size_t> labels;        // per point
  std::vector<std::size_t> source_modes;  // generating mode index per point
  std::vector<double> mode_centers;       // flat [num_classes x modes x dim]

  std::size_t size() const { return labels.size(); }
  std::size_t total_modes() const { return num_classes * modes_per_class; }
  const double* point(std::size_t i) const { return points.data() + i * dim; }
  const double* center(std::size_t cls, std::size_t mode) const {
    return mode_centers.data() + (cls * modes_per_class + mode) * dim;
  }
};

// Centers on the layout, then samples_per_class Gaussian draws per class
// cycling through that class's modes. Deterministic per spec.seed.
ClassConditionalDataset make_dataset(const DatasetSpec& spec);

// Uniform class subset, then uniform point subset within each kept class;
// labels re-indexed densely from 0 in the order the classes were drawn.
ClassConditionalDataset subset(const ClassConditionalDataset& dataset,
                               std::size_t num_classes,
                               std::size_t samples_per_class,
                               std::uint64_t seed);

// Uniform with-replacement draw of batch_size (point, label) pairs.
std::pair<std::vector<double>, std::vector<std::size_t>> minibatch(
    const ClassConditionalDataset& dataset, std::size_t batch_size, Rng& rng);

// CSV with header "label,x0,...,x{d-1}"
void write_points_csv(std::ostream& os, const std::vector<double>& points,
                      const std::vector<std::size_t>& labels, std::size_t dim);
void write_dataset_csv(std::ostream& os, const ClassConditionalDataset& dataset);

// Sibling CSV with header "label,mode_index,c0,...,c{d-1}"
void write_centers_csv(std::ostream& os, const ClassConditionalDataset& dataset);

struct LabeledPoints {
  std::size_t dim = 0;
  std::vector<double> points;
  std::vector<std::size_t> labels;
};

LabeledPoints read_points_csv(std::istream& is);
LabeledPoints read_points_csv_file(const std::string& path);

}  // namespace tcgan
