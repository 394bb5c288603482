#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tcgan/data.hpp"
#include "tcgan/errors.hpp"
#include "tcgan/metrics.hpp"
#include "tcgan/rng.hpp"

using namespace tcgan;

namespace {

FeatureSet random_set(std::size_t n, std::size_t d, Rng& rng,
                      double shift = 0.0) {
  FeatureSet s;
  s.dim = d;
  s.vectors.resize(n * d);
  for (std::size_t i = 0; i < n * d; ++i)
    s.vectors[i] = rng.normal() + (i % d == 0 ? shift : 0.0);
  return s;
}

// five points with exact mean c and identical covariance diag(1/2)
FeatureSet cross_points(double cx, double cy, std::size_t label) {
  FeatureSet s;
  s.dim = 2;
  const double pts[] = {cx, cy, cx + 1, cy, cx - 1, cy, cx, cy + 1, cx, cy - 1};
  s.vectors.assign(pts, pts + 10);
  s.labels.assign(5, label);
  return s;
}

Moments moments_of(const std::vector<double>& mean,
                   const std::vector<double>& cov) {
  return Moments{mean, cov};
}

}  // namespace

TEST_CASE("fid: identical sets score zero") {
  Rng rng(31);
  const auto a = random_set(40, 2, rng);
  CHECK(fid(a, a) <= 1e-9);
}

TEST_CASE("fid: shifted equal-covariance moments give the squared shift") {
  const auto r = moments_of({0.0, 0.0}, {1, 0, 0, 1});
  const auto f = moments_of({1.0, 0.0}, {1, 0, 0, 1});
  CHECK(fid_from_moments(r, f, 2) == doctest::Approx(1.0).epsilon(1e-12));
  // random equal covariances still cancel in the trace term
  Rng rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    const double a = 0.5 + rng.uniform(), b = 0.4 * rng.normal();
    const double c = 0.5 + rng.uniform() + b * b / a;
    const std::vector<double> cov{a, b, b, c};
    const auto rm = moments_of({0.0, 0.0}, cov);
    const auto fm = moments_of({0.75, -1.25}, cov);
    CHECK(std::abs(fid_from_moments(rm, fm, 2) - (0.75 * 0.75 + 1.25 * 1.25)) <
          1e-9);
  }
}

TEST_CASE("fid: dual-route oracle on random gaussian pairs") {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const auto real = random_set(64, 2, rng);
    const auto fake = random_set(48, 2, rng, 0.5);
    const auto mr = compute_moments(real);
    const auto mf = compute_moments(fake);
    const double via_lib = fid(real, fake);
    const double via_oracle =
        oracles::fid_2x2(mr.mean.data(), mr.cov.data(), mf.mean.data(),
                         mf.cov.data());
    CHECK(std::abs(via_lib - via_oracle) < 1e-6);
  }
}

TEST_CASE("fid: symmetry, non-negativity, translation covariance") {
  Rng rng(34);
  const auto a = random_set(50, 2, rng);
  const auto b = random_set(60, 2, rng, 1.0);
  CHECK(std::abs(fid(a, b) - fid(b, a)) < 1e-9);
  CHECK(fid(a, b) >= -1e-9);
  FeatureSet a_shift = a, b_shift = b;
  for (std::size_t i = 0; i < a_shift.vectors.size(); i += 2)
    a_shift.vectors[i] += 3.25;
  for (std::size_t i = 0; i < b_shift.vectors.size(); i += 2)
    b_shift.vectors[i] += 3.25;
  CHECK(std::abs(fid(a_shift, b_shift) - fid(a, b)) < 1e-9);
}

TEST_CASE("fid: degenerate sets are rejected with the required minimum") {
  Rng rng(35);
  const auto tiny = random_set(2, 2, rng);
  const auto ok = random_set(16, 2, rng);
  CHECK_THROWS_WITH_AS(fid(tiny, ok), doctest::Contains("more than 2"),
                       ContractError);
}

TEST_CASE("kid: single block equals the brute-force unbiased estimator") {
  Rng rng(36);
  for (int trial = 0; trial < 10; ++trial) {
    const auto real = random_set(4, 2, rng);
    const auto fake = random_set(4, 2, rng, 0.3);
    const double via_lib = kid(real, fake, 4);
    const double via_brute =
        oracles::brute_force_mmd2(real.vectors, 4, fake.vectors, 4, 2);
    CHECK(std::abs(via_lib - via_brute) < 1e-12);
  }
}

TEST_CASE("kid: null distribution centers on zero") {
  Rng rng(37);
  const int resamples = 100;
  std::vector<double> values;
  for (int r = 0; r < resamples; ++r) {
    const auto a = random_set(60, 2, rng);
    const auto b = random_set(60, 2, rng);
    values.push_back(kid(a, b, 30));
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= resamples;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= (resamples - 1);
  const double stderr_mean = std::sqrt(var / resamples);
  CHECK(std::abs(mean) <= 3.0 * stderr_mean);
}

TEST_CASE("kid: contract errors") {
  Rng rng(38);
  const auto a = random_set(8, 2, rng);
  CHECK_THROWS_AS(kid(a, a, 1), ContractError);
  const auto tiny = random_set(3, 2, rng);
  CHECK_THROWS_AS(kid(tiny, a, 4), ContractError);
}

TEST_CASE("precision/recall: identity and disjoint supports") {
  Rng rng(39);
  const auto a = random_set(20, 2, rng);
  const auto same = precision_recall(a, a, 3);
  CHECK(same.first == 1.0);
  CHECK(same.second == 1.0);
  FeatureSet far = a;
  for (double& v : far.vectors) v += 1e7;
  const auto none = precision_recall(a, far, 3);
  CHECK(none.first == 0.0);
  CHECK(none.second == 0.0);
}

TEST_CASE("precision/recall: exact agreement with the exhaustive oracle") {
  Rng rng(40);
  for (int trial = 0; trial < 20; ++trial) {
    const auto real = random_set(16, 2, rng);
    const auto fake = random_set(16, 2, rng, 0.5 + 0.1 * trial);
    const auto lib = precision_recall(real, fake, 3);
    const auto oracle = oracles::exhaustive_precision_recall(
        real.vectors, 16, fake.vectors, 16, 2, 3);
    CHECK(lib.first == oracle.first);
    CHECK(lib.second == oracle.second);
  }
}

TEST_CASE("precision/recall: degrades monotonically with displacement") {
  Rng rng(41);
  const auto real = random_set(64, 2, rng);
  double prev_precision = 1.1, prev_recall = 1.1;
  for (const double shift : {0.0, 1.0, 2.0, 4.0, 8.0}) {
    FeatureSet fake = real;
    for (std::size_t i = 0; i < fake.vectors.size(); i += 2)
      fake.vectors[i] += shift;
    const auto pr = precision_recall(real, fake, 3);
    CHECK(pr.first <= prev_precision + 1e-12);
    CHECK(pr.second <= prev_recall + 1e-12);
    prev_precision = pr.first;
    prev_recall = pr.second;
  }
  CHECK_THROWS_AS(precision_recall(real, real, 64), ContractError);
}

TEST_CASE("mode coverage: exact centers cover everything") {
  DatasetSpec spec;
  spec.num_classes = 3;
  spec.samples_per_class = 8;
  spec.modes_per_class = 2;
  spec.mode_sigma = 0.05;
  spec.seed = 5;
  const auto ds = make_dataset(spec);
  FeatureSet fake;
  fake.dim = 2;
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t m = 0; m < 2; ++m) {
      fake.vectors.push_back(ds.center(c, m)[0]);
      fake.vectors.push_back(ds.center(c, m)[1]);
      fake.labels.push_back(c);
    }
  const auto cov = mode_coverage(fake, ds, 3.0);
  CHECK(cov.first == 1.0);
  CHECK(cov.second == 1.0);
}

TEST_CASE("mode coverage: collapse to a single center") {
  DatasetSpec spec;
  spec.num_classes = 4;
  spec.samples_per_class = 8;
  spec.modes_per_class = 3;
  spec.mode_sigma = 0.05;
  spec.seed = 6;
  const auto ds = make_dataset(spec);
  FeatureSet fake;
  fake.dim = 2;
  // every class emits the same point: class 0's first mode center
  for (std::size_t c = 0; c < 4; ++c)
    for (int rep = 0; rep < 5; ++rep) {
      fake.vectors.push_back(ds.center(0, 0)[0]);
      fake.vectors.push_back(ds.center(0, 0)[1]);
      fake.labels.push_back(c);
    }
  const auto cov = mode_coverage(fake, ds, 3.0);
  CHECK(cov.first == doctest::Approx(1.0 / 12.0));
  CHECK(cov.second == doctest::Approx(0.25));  // only class 0 fakes are faithful

  // duplication of fakes must not change coverage
  FeatureSet doubled = fake;
  doubled.vectors.insert(doubled.vectors.end(), fake.vectors.begin(),
                         fake.vectors.end());
  doubled.labels.insert(doubled.labels.end(), fake.labels.begin(),
                        fake.labels.end());
  CHECK(mode_coverage(doubled, ds, 3.0).first == cov.first);
}

TEST_CASE("mode coverage: collapsed-generator fidelity approaches 1/C") {
  // all classes emit one shared cloud scattered near class 2's ring
  DatasetSpec spec;
  spec.num_classes = 8;
  spec.samples_per_class = 10;
  spec.modes_per_class = 4;
  spec.mode_sigma = 0.05;
  spec.seed = 7;
  const auto ds = make_dataset(spec);
  Rng rng(77);
  FeatureSet fake;
  fake.dim = 2;
  const std::size_t per_class = 200;
  for (std::size_t c = 0; c < 8; ++c)
    for (std::size_t i = 0; i < per_class; ++i) {
      // uniform angle on a ring sweeping all radii: lands near every class
      const double angle = 2.0 * M_PI * rng.uniform();
      const double radius = 1.0 + 7.0 * rng.uniform();
      fake.vectors.push_back(radius * std::cos(angle));
      fake.vectors.push_back(radius * std::sin(angle));
      fake.labels.push_back(c);
    }
  const auto cov = mode_coverage(fake, ds, 3.0);
  // requested labels are independent of landing class, so fidelity ~ 1/8
  const double expect = 1.0 / 8.0;
  const double sigma =
      std::sqrt(expect * (1 - expect) / static_cast<double>(8 * per_class));
  CHECK(std::abs(cov.second - expect) < 5.0 * sigma);
}

TEST_CASE("classwise fid: displaced class sticks out, mean averages") {
  FeatureSet real, fake;
  real.dim = fake.dim = 2;
  const std::size_t classes = 4;
  for (std::size_t c = 0; c < classes; ++c) {
    const auto r = cross_points(2.0 * c, 0.0, c);
    auto f = cross_points(2.0 * c + (c == 1 ? 1.0 : 0.0), 0.0, c);
    real.vectors.insert(real.vectors.end(), r.vectors.begin(), r.vectors.end());
    real.labels.insert(real.labels.end(), r.labels.begin(), r.labels.end());
    fake.vectors.insert(fake.vectors.end(), f.vectors.begin(), f.vectors.end());
    fake.labels.insert(fake.labels.end(), f.labels.begin(), f.labels.end());
  }
  const auto cw = classwise(MetricKind::fid, real, fake);
  REQUIRE(cw.classes.size() == classes);
  for (std::size_t i = 0; i < classes; ++i) {
    if (cw.classes[i] == 1)
      CHECK(std::abs(cw.values[i] - 1.0) < 1e-9);
    else
      CHECK(std::abs(cw.values[i]) < 1e-9);
  }
  CHECK(cw.mean == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("classwise kid equals whole-set kid on the class restriction") {
  Rng rng(42);
  FeatureSet real, fake;
  real.dim = fake.dim = 2;
  for (std::size_t c = 0; c < 3; ++c) {
    auto r = random_set(12, 2, rng, 1.0 * c);
    auto f = random_set(12, 2, rng, 1.0 * c + 0.25);
    real.vectors.insert(real.vectors.end(), r.vectors.begin(), r.vectors.end());
    fake.vectors.insert(fake.vectors.end(), f.vectors.begin(), f.vectors.end());
    for (int i = 0; i < 12; ++i) {
      real.labels.push_back(c);
      fake.labels.push_back(c);
    }
  }
  const auto cw = classwise(MetricKind::kid, real, fake, 12);
  for (std::size_t i = 0; i < cw.classes.size(); ++i) {
    const std::size_t c = cw.classes[i];
    FeatureSet r_only, f_only;
    r_only.dim = f_only.dim = 2;
    for (std::size_t j = 0; j < real.size(); ++j)
      if (real.labels[j] == c)
        r_only.vectors.insert(r_only.vectors.end(), real.row(j),
                              real.row(j) + 2);
    for (std::size_t j = 0; j < fake.size(); ++j)
      if (fake.labels[j] == c)
        f_only.vectors.insert(f_only.vectors.end(), fake.row(j),
                              fake.row(j) + 2);
    CHECK(std::abs(cw.values[i] - kid(r_only, f_only, 12)) < 1e-12);
  }
}

TEST_CASE("classwise: missing class is named in the error") {
  Rng rng(43);
  auto real = random_set(12, 2, rng);
  auto fake = random_set(12, 2, rng);
  real.labels.assign(12, 0);
  fake.labels.assign(12, 1);
  CHECK_THROWS_WITH_AS(classwise(MetricKind::fid, real, fake),
                       doctest::Contains("class 0"), ContractError);
}
