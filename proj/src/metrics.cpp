#include "tcgan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tcgan/errors.hpp"
#include "tcgan/kernels.hpp"

namespace tcgan {

namespace {

// Cyclic Jacobi eigendecomposition for symmetric d x d matrices. Plenty for
// the desk-scale feature dimensions (d <= 8); deterministic sweep order.
void jacobi_eigen(std::vector<double> a, std::size_t d,
                  std::vector<double>& eigvals, std::vector<double>& eigvecs) {
  eigvecs.assign(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) eigvecs[i * d + i] = 1.0;
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  const double tol = scale > 0.0 ? scale * 1e-15 : 0.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) off += std::abs(a[p * d + q]);
    if (off <= tol) break;
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a[p * d + q];
        if (std::abs(apq) <= tol * 1e-2) continue;
        const double theta = (a[q * d + q] - a[p * d + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t i = 0; i < d; ++i) {
          const double aip = a[i * d + p], aiq = a[i * d + q];
          a[i * d + p] = c * aip - s * aiq;
          a[i * d + q] = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < d; ++i) {
          const double api = a[p * d + i], aqi = a[q * d + i];
          a[p * d + i] = c * api - s * aqi;
          a[q * d + i] = s * api + c * aqi;
        }
        for (std::size_t i = 0; i < d; ++i) {
          const double vip = eigvecs[i * d + p], viq = eigvecs[i * d + q];
          eigvecs[i * d + p] = c * vip - s * viq;
          eigvecs[i * d + q] = s * vip + c * viq;
        }
      }
    }
  }
  eigvals.resize(d);
  for (std::size_t i = 0; i < d; ++i) eigvals[i] = a[i * d + i];
}

// V diag(sqrt(max(lambda, 0))) V^T
std::vector<double> sqrt_psd(const std::vector<double>& m, std::size_t d) {
  std::vector<double> eigvals, v;
  jacobi_eigen(m, d, eigvals, v);
  std::vector<double> scaled(d * d);  // columns of V scaled by sqrt(lambda)
  for (std::size_t j = 0; j < d; ++j) {
    const double s = eigvals[j] > 0.0 ? std::sqrt(eigvals[j]) : 0.0;
    for (std::size_t i = 0; i < d; ++i) scaled[i * d + j] = v[i * d + j] * s;
  }
  std::vector<double> out(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      double sum = 0.0;
      for (std::size_t r = 0; r < d; ++r) sum += scaled[i * d + r] * v[j * d + r];
      out[i * d + j] = sum;
    }
  return out;
}

std::vector<double> matmul_square(const std::vector<double>& a,
                                  const std::vector<double>& b, std::size_t d) {
  std::vector<double> out(d * d, 0.0);
  kernels::serial::matmul_nn(a.data(), b.data(), out.data(), d, d, d);
  return out;
}

FeatureSet restrict_to_class(const FeatureSet& set, std::size_t cls) {
  FeatureSet out;
  out.dim = set.dim;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.labels[i] != cls) continue;
    out.vectors.insert(out.vectors.end(), set.row(i), set.row(i) + set.dim);
    out.labels.push_back(cls);
  }
  return out;
}

void require_same_dim(const FeatureSet& a, const FeatureSet& b, const char* op) {
  if (a.dim != b.dim || a.dim == 0)
    throw ContractError(std::string(op) + ": feature dimensions disagree (" +
                        std::to_string(a.dim) + " vs " + std::to_string(b.dim) +
                        ")");
}

}  // namespace

Moments compute_moments(const FeatureSet& set) {
  const std::size_t n = set.size(), d = set.dim;
  if (n <= d)
    throw ContractError("moments: need more than " + std::to_string(d) +
                        " samples for a " + std::to_string(d) +
                        "-dimensional covariance, got " + std::to_string(n));
  Moments m;
  m.mean.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t q = 0; q < d; ++q) m.mean[q] += set.vectors[i * d + q];
  for (double& v : m.mean) v /= static_cast<double>(n);
  m.cov.assign(d * d, 0.0);
  std::vector<double> centered(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t q = 0; q < d; ++q)
      centered[q] = set.vectors[i * d + q] - m.mean[q];
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q)
        m.cov[p * d + q] += centered[p] * centered[q];
  }
  const double norm = 1.0 / static_cast<double>(n - 1);
  for (double& v : m.cov) v *= norm;
  return m;
}

double fid_from_moments(const Moments& real, const Moments& fake,
                        std::size_t d) {
  double mean_sq = 0.0;
  for (std::size_t q = 0; q < d; ++q) {
    const double diff = real.mean[q] - fake.mean[q];
    mean_sq += diff * diff;
  }
  const auto sr = sqrt_psd(real.cov, d);
  const auto inner = matmul_square(matmul_square(sr, fake.cov, d), sr, d);
  const auto cross = sqrt_psd(inner, d);
  double trace = 0.0;
  for (std::size_t q = 0; q < d; ++q)
    trace += real.cov[q * d + q] + fake.cov[q * d + q] - 2.0 * cross[q * d + q];
  const double result = mean_sq + trace;
  return result > 0.0 ? result : 0.0;
}

double fid(const FeatureSet& real, const FeatureSet& fake) {
  require_same_dim(real, fake, "fid");
  return fid_from_moments(compute_moments(real), compute_moments(fake),
                          real.dim);
}

double kid(const FeatureSet& real, const FeatureSet& fake,
           std::size_t block_size) {
  require_same_dim(real, fake, "kid");
  const std::size_t n = real.size(), m = fake.size();
  std::size_t block = block_size;
  if (block == 0) block = std::min({n, m, std::size_t{100}});
  if (block < 2) throw ContractError("kid: block_size must be >= 2");
  if (n < block || m < block)
    throw ContractError("kid: both sets must hold at least block_size = " +
                        std::to_string(block) + " samples");
  const std::size_t num_blocks = std::min(n, m) / block;
  const std::size_t d = real.dim;
  std::vector<double> kxx(block * block), kyy(block * block), kxy(block * block);
  double total = 0.0;
  for (std::size_t bi = 0; bi < num_blocks; ++bi) {
    const double* xs = real.vectors.data() + bi * block * d;
    const double* ys = fake.vectors.data() + bi * block * d;
    kernels::polynomial_gram3(xs, block, xs, block, d, kxx.data());
    kernels::polynomial_gram3(ys, block, ys, block, d, kyy.data());
    kernels::polynomial_gram3(xs, block, ys, block, d, kxy.data());
    double sum_xx = 0.0, sum_yy = 0.0, sum_xy = 0.0;
    for (std::size_t i = 0; i < block; ++i) {
      for (std::size_t j = 0; j < block; ++j) {
        if (i != j) {
          sum_xx += kxx[i * block + j];
          sum_yy += kyy[i * block + j];
        }
        sum_xy += kxy[i * block + j];
      }
    }
    const double bb = static_cast<double>(block) * (block - 1);
    const double b2 = static_cast<double>(block) * block;
    total += sum_xx / bb + sum_yy / bb - 2.0 * sum_xy / b2;
  }
  return total / static_cast<double>(num_blocks);
}

std::pair<double, double> precision_recall(const FeatureSet& real,
                                           const FeatureSet& fake,
                                           std::size_t k) {
  require_same_dim(real, fake, "precision_recall");
  const std::size_t n = real.size(), m = fake.size();
  if (k < 1) throw ContractError("precision_recall: k must be >= 1");
  if (k >= n || k >= m)
    throw ContractError("precision_recall: k = " + std::to_string(k) +
                        " must be smaller than both set sizes (" +
                        std::to_string(n) + ", " + std::to_string(m) + ")");
  const std::size_t d = real.dim;

  // squared k-NN radius of every point within its own set
  auto knn_radii_sq = [&](const FeatureSet& set, std::size_t count) {
    std::vector<double> dists(count * count);
    kernels::pairwise_sqdist(set.vectors.data(), count, set.vectors.data(),
                             count, d, dists.data());
    std::vector<double> radii(count);
    std::vector<double> row(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t w = 0;
      for (std::size_t j = 0; j < count; ++j)
        if (j != i) row[w++] = dists[i * count + j];
      std::nth_element(row.begin(), row.begin() + (k - 1), row.end());
      radii[i] = row[k - 1];
    }
    return radii;
  };

  const auto real_radii = knn_radii_sq(real, n);
  const auto fake_radii = knn_radii_sq(fake, m);

  std::vector<double> cross(m * n);  // fake rows x real cols
  kernels::pairwise_sqdist(fake.vectors.data(), m, real.vectors.data(), n, d,
                           cross.data());

  std::size_t precise = 0;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (cross[j * n + i] <= real_radii[i]) {
        ++precise;
        break;
      }
    }
  }
  std::size_t recalled = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (cross[j * n + i] <= fake_radii[j]) {
        ++recalled;
        break;
      }
    }
  }
  return {static_cast<double>(precise) / static_cast<double>(m),
          static_cast<double>(recalled) / static_cast<double>(n)};
}

std::pair<double, double> mode_coverage(const FeatureSet& fake,
                                        const ClassConditionalDataset& dataset,
                                        double radius_multiple) {
  if (!fake.labeled())
    throw ContractError("mode_coverage: fake set must be labeled");
  if (fake.dim != dataset.dim)
    throw ContractError("mode_coverage: dimension mismatch");
  for (std::size_t label : fake.labels)
    if (label >= dataset.num_classes)
      throw IndexError("mode_coverage: label " + std::to_string(label) +
                       " out of range for " +
                       std::to_string(dataset.num_classes) + " classes");
  const std::size_t d = dataset.dim;
  const double radius = radius_multiple * dataset.mode_sigma;
  const double radius_sq = radius * radius;
  std::vector<char> covered(dataset.total_modes(), 0);
  std::size_t faithful = 0;
  for (std::size_t i = 0; i < fake.size(); ++i) {
    const double* x = fake.row(i);
    const std::size_t requested = fake.labels[i];
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_class = 0;
    for (std::size_t c = 0; c < dataset.num_classes; ++c) {
      for (std::size_t mo = 0; mo < dataset.modes_per_class; ++mo) {
        const double* center = dataset.center(c, mo);
        double dist_sq = 0.0;
        for (std::size_t q = 0; q < d; ++q) {
          const double diff = x[q] - center[q];
          dist_sq += diff * diff;
        }
        if (c == requested && dist_sq <= radius_sq)
          covered[c * dataset.modes_per_class + mo] = 1;
        if (dist_sq < best) {
          best = dist_sq;
          best_class = c;
        }
      }
    }
    if (best_class == requested) ++faithful;
  }
  std::size_t covered_count = 0;
  for (char c : covered) covered_count += c;
  return {static_cast<double>(covered_count) /
              static_cast<double>(dataset.total_modes()),
          fake.size() == 0
              ? 0.0
              : static_cast<double>(faithful) / static_cast<double>(fake.size())};
}

ClasswiseValues classwise(MetricKind kind, const FeatureSet& real,
                          const FeatureSet& fake, std::size_t kid_block) {
  require_same_dim(real, fake, "classwise");
  if (!real.labeled() || !fake.labeled())
    throw ContractError("classwise: both sets must be labeled");
  std::size_t max_label = 0;
  for (std::size_t l : real.labels) max_label = std::max(max_label, l);
  for (std::size_t l : fake.labels) max_label = std::max(max_label, l);
  ClasswiseValues out;
  for (std::size_t cls = 0; cls <= max_label; ++cls) {
    const FeatureSet r = restrict_to_class(real, cls);
    const FeatureSet f = restrict_to_class(fake, cls);
    if (r.size() == 0 && f.size() == 0) continue;
    if (r.size() == 0 || f.size() == 0)
      throw ContractError("classwise: class " + std::to_string(cls) +
                          " missing on " + (r.size() == 0 ? "real" : "fake") +
                          " side");
    out.classes.push_back(cls);
    if (kind == MetricKind::fid)
      out.values.push_back(fid(r, f));
    else
      out.values.push_back(kid(r, f, kid_block == 0
                                          ? std::min({r.size(), f.size(),
                                                      std::size_t{100}})
                                          : kid_block));
  }
  if (out.values.empty()) throw ContractError("classwise: no classes present");
  double sum = 0.0;
  for (double v : out.values) sum += v;
  out.mean = sum / static_cast<double>(out.values.size());
  return out;
}

}  // namespace tcgan
