#include "tcgan/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "tcgan/errors.hpp"

namespace tcgan {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kRingBaseRadius = 1.0;
constexpr double kRingRadiusStep = 0.7;
constexpr double kGridSpacing = 1.0;

void validate_spec(const DatasetSpec& spec) {
  if (spec.num_classes == 0 || spec.samples_per_class == 0 ||
      spec.modes_per_class == 0)
    throw ContractError("dataset spec: all counts must be positive");
  if (!(spec.mode_sigma > 0.0))
    throw ContractError("dataset spec: mode_sigma must be positive");
  if (spec.dim < 2) throw ContractError("dataset spec: dim must be >= 2");
}

std::vector<double> place_centers(const DatasetSpec& spec) {
  std::vector<double> centers(spec.num_classes * spec.modes_per_class * spec.dim,
                              0.0);
  for (std::size_t c = 0; c < spec.num_classes; ++c) {
    for (std::size_t m = 0; m < spec.modes_per_class; ++m) {
      double* center = centers.data() + (c * spec.modes_per_class + m) * spec.dim;
      switch (spec.layout) {
        case Layout::ring: {
          // class-specific radius, per-class phase so rings don't align
          const double radius = kRingBaseRadius + kRingRadiusStep * c;
          const double phase =
              kTwoPi * c /
              static_cast<double>(spec.num_classes * spec.modes_per_class);
          const double angle =
              kTwoPi * m / static_cast<double>(spec.modes_per_class) + phase;
          center[0] = radius * std::cos(angle);
          center[1] = radius * std::sin(angle);
          break;
        }
        case Layout::grid: {
          // one lattice row per class, one column per mode
          center[0] = kGridSpacing * static_cast<double>(m);
          center[1] = kGridSpacing * static_cast<double>(c);
          break;
        }
        default:
          throw ContractError("dataset spec: unknown layout");
      }
    }
  }
  return centers;
}

}  // namespace

ClassConditionalDataset make_dataset(const DatasetSpec& spec) {
  validate_spec(spec);
  ClassConditionalDataset ds;
  ds.dim = spec.dim;
  ds.num_classes = spec.num_classes;
  ds.modes_per_class = spec.modes_per_class;
  ds.mode_sigma = spec.mode_sigma;
  ds.mode_centers = place_centers(spec);

  const std::size_t n = spec.num_classes * spec.samples_per_class;
  ds.points.resize(n * spec.dim);
  ds.labels.resize(n);
  ds.source_modes.resize(n);

  Rng rng(spec.seed, 0);
  std::vector<double> offset(spec.dim);
  std::size_t row = 0;
  for (std::size_t c = 0; c < spec.num_classes; ++c) {
    for (std::size_t s = 0; s < spec.samples_per_class; ++s, ++row) {
      const std::size_t mode = s % spec.modes_per_class;
      double norm_sq = 0.0;
      for (std::size_t q = 0; q < spec.dim; ++q) {
        offset[q] = spec.mode_sigma * rng.normal();
        norm_sq += offset[q] * offset[q];
      }
      // clamp the offset to the 6-sigma ball; keeps every point attributable
      // to its source mode without rejection sampling
      const double limit = 6.0 * spec.mode_sigma;
      if (norm_sq > limit * limit) {
        const double shrink = limit / std::sqrt(norm_sq);
        for (double& o : offset) o *= shrink;
      }
      const double* center = ds.center(c, mode);
      for (std::size_t q = 0; q < spec.dim; ++q)
        ds.points[row * spec.dim + q] = center[q] + offset[q];
      ds.labels[row] = c;
      ds.source_modes[row] = mode;
    }
  }
  return ds;
}

ClassConditionalDataset subset(const ClassConditionalDataset& dataset,
                               std::size_t num_classes,
                               std::size_t samples_per_class,
                               std::uint64_t seed) {
  if (num_classes == 0 || num_classes > dataset.num_classes)
    throw ContractError("subset: requested " + std::to_string(num_classes) +
                        " classes from a dataset with " +
                        std::to_string(dataset.num_classes));
  std::vector<std::vector<std::size_t>> by_class(dataset.num_classes);
  for (std::size_t i = 0; i < dataset.size(); ++i)
    by_class[dataset.labels[i]].push_back(i);
  std::size_t min_class = dataset.size();
  for (const auto& idx : by_class) min_class = std::min(min_class, idx.size());
  if (samples_per_class == 0 || samples_per_class > min_class)
    throw ContractError("subset: requested " + std::to_string(samples_per_class) +
                        " samples per class, smallest class has " +
                        std::to_string(min_class));

  Rng rng(seed, 1);
  // Fisher-Yates prefix draws keep a subset of all classes in original order
  // (identity when nothing is dropped), and likewise within each class.
  auto draw_prefix = [&rng](std::size_t total, std::size_t want) {
    std::vector<std::size_t> pool(total);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    if (want < total) {
      for (std::size_t i = 0; i < want; ++i) {
        const std::size_t j = i + rng.uniform_index(total - i);
        std::swap(pool[i], pool[j]);
      }
      pool.resize(want);
      std::sort(pool.begin(), pool.end());
    }
    return pool;
  };

  const auto kept_classes = draw_prefix(dataset.num_classes, num_classes);

  ClassConditionalDataset out;
  out.dim = dataset.dim;
  out.num_classes = num_classes;
  out.modes_per_class = dataset.modes_per_class;
  out.mode_sigma = dataset.mode_sigma;
  out.mode_centers.resize(num_classes * dataset.modes_per_class * dataset.dim);
  for (std::size_t nc = 0; nc < num_classes; ++nc) {
    const std::size_t oc = kept_classes[nc];
    std::copy_n(dataset.center(oc, 0), dataset.modes_per_class * dataset.dim,
                out.mode_centers.data() + nc * dataset.modes_per_class * dataset.dim);
    const auto kept_points = draw_prefix(by_class[oc].size(), samples_per_class);
    for (std::size_t pi : kept_points) {
      const std::size_t src = by_class[oc][pi];
      out.points.insert(out.points.end(), dataset.point(src),
                        dataset.point(src) + dataset.dim);
      out.labels.push_back(nc);
      out.source_modes.push_back(dataset.source_modes[src]);
    }
  }
  return out;
}

std::pair<std::vector<double>, std::vector<std::size_t>> minibatch(
    const ClassConditionalDataset& dataset, std::size_t batch_size, Rng& rng) {
  if (batch_size == 0) throw ContractError("minibatch: batch_size must be >= 1");
  if (dataset.size() == 0) throw ContractError("minibatch: empty dataset");
  std::vector<double> points(batch_size * dataset.dim);
  std::vector<std::size_t> labels(batch_size);
  for (std::size_t b = 0; b < batch_size; ++b) {
    const std::size_t i = rng.uniform_index(dataset.size());
    std::copy_n(dataset.point(i), dataset.dim, points.data() + b * dataset.dim);
    labels[b] = dataset.labels[i];
  }
  return {std::move(points), std::move(labels)};
}

void write_points_csv(std::ostream& os, const std::vector<double>& points,
                      const std::vector<std::size_t>& labels, std::size_t dim) {
  os << "label";
  for (std::size_t q = 0; q < dim; ++q) os << ",x" << q;
  os << "\n";
  char buf[64];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    os << labels[i];
    for (std::size_t q = 0; q < dim; ++q) {
      std::snprintf(buf, sizeof(buf), ",%.17g", points[i * dim + q]);
      os << buf;
    }
    os << "\n";
  }
}

void write_dataset_csv(std::ostream& os, const ClassConditionalDataset& dataset) {
  write_points_csv(os, dataset.points, dataset.labels, dataset.dim);
}

void write_centers_csv(std::ostream& os, const ClassConditionalDataset& dataset) {
  os << "label,mode_index";
  for (std::size_t q = 0; q < dataset.dim; ++q) os << ",c" << q;
  os << "\n";
  char buf[64];
  for (std::size_t c = 0; c < dataset.num_classes; ++c) {
    for (std::size_t m = 0; m < dataset.modes_per_class; ++m) {
      os << c << "," << m;
      const double* center = dataset.center(c, m);
      for (std::size_t q = 0; q < dataset.dim; ++q) {
        std::snprintf(buf, sizeof(buf), ",%.17g", center[q]);
        os << buf;
      }
      os << "\n";
    }
  }
}

LabeledPoints read_points_csv(std::istream& is) {
  LabeledPoints out;
  std::string line;
  if (!std::getline(is, line)) throw FormatError("points csv: empty file");
  std::size_t dim = 0;
  {
    std::stringstream header(line);
    std::string field;
    if (!std::getline(header, field, ',') || field != "label")
      throw FormatError("points csv: header must start with 'label'");
    while (std::getline(header, field, ',')) {
      if (field != "x" + std::to_string(dim))
        throw FormatError("points csv: unexpected header column '" + field + "'");
      ++dim;
    }
  }
  if (dim == 0) throw FormatError("points csv: no coordinate columns");
  out.dim = dim;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string field;
    if (!std::getline(row, field, ','))
      throw FormatError("points csv: bad row at line " + std::to_string(lineno));
    try {
      out.labels.push_back(std::stoul(field));
    } catch (const std::exception&) {
      throw FormatError("points csv: bad label at line " + std::to_string(lineno));
    }
    std::size_t got = 0;
    while (std::getline(row, field, ',')) {
      char* end = nullptr;
      const double v = std::strtod(field.c_str(), &end);
      if (end == field.c_str())
        throw FormatError("points csv: bad number at line " +
                          std::to_string(lineno));
      out.points.push_back(v);
      ++got;
    }
    if (got != dim)
      throw FormatError("points csv: expected " + std::to_string(dim) +
                        " coordinates at line " + std::to_string(lineno));
  }
  if (out.labels.empty()) throw FormatError("points csv: no data rows");
  return out;
}

LabeledPoints read_points_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open points csv: " + path);
  return read_points_csv(is);
}

}  // namespace tcgan
