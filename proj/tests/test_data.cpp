#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "tcgan/data.hpp"
#include "tcgan/errors.hpp"

using namespace tcgan;

namespace {

DatasetSpec tight_spec() {
  DatasetSpec spec;
  spec.num_classes = 2;
  spec.samples_per_class = 10;
  spec.modes_per_class = 1;
  spec.mode_sigma = 0.01;
  spec.layout = Layout::ring;
  spec.seed = 42;
  return spec;
}

}  // namespace

TEST_CASE("tight dataset: counts and class means near their centers") {
  const auto ds = make_dataset(tight_spec());
  CHECK(ds.size() == 20);
  CHECK(ds.num_classes * 10 == ds.size());
  for (std::size_t c = 0; c < 2; ++c) {
    double mean[2] = {0, 0};
    std::size_t count = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (ds.labels[i] != c) continue;
      mean[0] += ds.point(i)[0];
      mean[1] += ds.point(i)[1];
      ++count;
    }
    CHECK(count == 10);
    mean[0] /= count;
    mean[1] /= count;
    const double* center = ds.center(c, 0);
    const double dist = std::hypot(mean[0] - center[0], mean[1] - center[1]);
    CHECK(dist < 0.02);
  }
}

TEST_CASE("identical seeds reproduce the dataset bit for bit") {
  const auto a = make_dataset(tight_spec());
  const auto b = make_dataset(tight_spec());
  CHECK(a.points == b.points);
  CHECK(a.labels == b.labels);
  CHECK(a.mode_centers == b.mode_centers);
}

TEST_CASE("ring centers are evenly spaced per class") {
  DatasetSpec spec = tight_spec();
  spec.num_classes = 3;
  spec.modes_per_class = 4;
  const auto ds = make_dataset(spec);
  for (std::size_t c = 0; c < 3; ++c) {
    std::vector<double> angles;
    for (std::size_t m = 0; m < 4; ++m) {
      const double* ctr = ds.center(c, m);
      angles.push_back(std::atan2(ctr[1], ctr[0]));
      const double radius = std::hypot(ctr[0], ctr[1]);
      CHECK(radius == doctest::Approx(1.0 + 1.0 * c).epsilon(1e-12));
    }
    for (std::size_t m = 1; m < 4; ++m) {
      double gap = angles[m] - angles[m - 1];
      while (gap < 0) gap += 2.0 * M_PI;
      CHECK(gap == doctest::Approx(M_PI / 2.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("grid layout puts each class on its own row") {
  DatasetSpec spec = tight_spec();
  spec.layout = Layout::grid;
  spec.num_classes = 3;
  spec.modes_per_class = 2;
  const auto ds = make_dataset(spec);
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t m = 0; m < 2; ++m) {
      CHECK(ds.center(c, m)[0] == doctest::Approx(1.0 * m));
      CHECK(ds.center(c, m)[1] == doctest::Approx(1.0 * c));
    }
}

TEST_CASE("every point stays within six sigma of its source mode") {
  DatasetSpec spec = tight_spec();
  spec.num_classes = 5;
  spec.samples_per_class = 200;
  spec.modes_per_class = 3;
  spec.mode_sigma = 0.2;
  const auto ds = make_dataset(spec);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double* center = ds.center(ds.labels[i], ds.source_modes[i]);
    const double dist = std::hypot(ds.point(i)[0] - center[0],
                                   ds.point(i)[1] - center[1]);
    CHECK(dist <= 6.0 * spec.mode_sigma + 1e-12);
  }
}

TEST_CASE("subset keeps everything when nothing is dropped") {
  const auto ds = make_dataset(tight_spec());
  const auto same = subset(ds, 2, 10, 7);
  CHECK(same.points == ds.points);
  CHECK(same.labels == ds.labels);
  CHECK(same.mode_centers == ds.mode_centers);
}

TEST_CASE("subset counts and dense relabeling") {
  DatasetSpec spec = tight_spec();
  spec.num_classes = 20;
  spec.samples_per_class = 100;
  const auto ds = make_dataset(spec);
  const auto small = subset(ds, 5, 10, 99);
  CHECK(small.size() == 50);
  CHECK(small.num_classes == 5);
  for (std::size_t l : small.labels) CHECK(l < 5);
  for (std::size_t c = 0; c < 5; ++c) {
    std::size_t count = 0;
    for (std::size_t l : small.labels) count += (l == c);
    CHECK(count == 10);
  }
  CHECK_THROWS_AS(subset(ds, 21, 10, 0), ContractError);
  CHECK_THROWS_AS(subset(ds, 5, 101, 0), ContractError);
}

TEST_CASE("different subset seeds pick different index sets") {
  DatasetSpec spec = tight_spec();
  spec.num_classes = 20;
  spec.samples_per_class = 100;
  const auto ds = make_dataset(spec);
  std::size_t differing = 0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    const auto a = subset(ds, 5, 10, 1000 + trial);
    const auto b = subset(ds, 5, 10, 2000 + trial);
    if (a.points != b.points) ++differing;
  }
  // collision probability per trial is far below 1%
  CHECK(differing >= trials - 1);
}

TEST_CASE("subset label/point alignment survives via a sentinel") {
  DatasetSpec spec = tight_spec();
  spec.num_classes = 6;
  spec.samples_per_class = 30;
  auto ds = make_dataset(spec);
  // tag one point with unmistakable coordinates, keep its class
  const std::size_t victim = 37;
  const std::size_t victim_class = ds.labels[victim];
  ds.points[victim * ds.dim] = 123.25;
  ds.points[victim * ds.dim + 1] = -77.5;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto sub = subset(ds, 6, 30, seed);  // keep-all preserves the tag
    bool found = false;
    for (std::size_t i = 0; i < sub.size(); ++i) {
      if (sub.points[i * sub.dim] == 123.25) {
        CHECK(sub.labels[i] == victim_class);
        found = true;
      }
    }
    CHECK(found);
    Rng rng(seed, 9);
    const auto [pts, labels] = minibatch(sub, 64, rng);
    for (std::size_t b = 0; b < 64; ++b)
      if (pts[b * sub.dim] == 123.25) CHECK(labels[b] == victim_class);
  }
}

TEST_CASE("minibatch basics") {
  DatasetSpec spec = tight_spec();
  spec.num_classes = 1;
  spec.samples_per_class = 1;
  const auto one = make_dataset(spec);
  Rng rng(1, 0);
  const auto [pts, labels] = minibatch(one, 1, rng);
  CHECK(pts[0] == one.point(0)[0]);
  CHECK(labels[0] == 0);

  Rng r1(5, 0), r2(5, 0);
  const auto ds = make_dataset(tight_spec());
  const auto a = minibatch(ds, 16, r1);
  const auto b = minibatch(ds, 16, r2);
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
  CHECK_THROWS_AS(minibatch(ds, 0, r1), ContractError);
}

TEST_CASE("minibatch frequencies concentrate around uniform") {
  DatasetSpec spec = tight_spec();
  spec.num_classes = 4;
  spec.samples_per_class = 25;
  const auto ds = make_dataset(spec);
  Rng rng(123, 0);
  const std::size_t draws = 100000;
  std::vector<std::size_t> counts(4, 0);
  for (std::size_t i = 0; i < draws / 100; ++i) {
    const auto [pts, labels] = minibatch(ds, 100, rng);
    for (std::size_t l : labels) ++counts[l];
  }
  const double expect = draws / 4.0;
  const double sigma = std::sqrt(draws * 0.25 * 0.75);
  for (std::size_t c = 0; c < 4; ++c)
    CHECK(std::abs(static_cast<double>(counts[c]) - expect) < 3.0 * sigma);
}

TEST_CASE("csv round trip") {
  const auto ds = make_dataset(tight_spec());
  std::ostringstream os;
  write_dataset_csv(os, ds);
  std::istringstream is(os.str());
  const auto back = read_points_csv(is);
  CHECK(back.dim == ds.dim);
  CHECK(back.points == ds.points);
  CHECK(back.labels == ds.labels);

  std::ostringstream centers;
  write_centers_csv(centers, ds);
  CHECK(centers.str().rfind("label,mode_index,c0,c1\n", 0) == 0);

  std::istringstream bad("label,x0,x1\n0,1.0\n");
  CHECK_THROWS_AS(read_points_csv(bad), FormatError);
  std::istringstream bad_header("wrong,x0\n0,1\n");
  CHECK_THROWS_AS(read_points_csv(bad_header), FormatError);
}

TEST_CASE("spec validation") {
  DatasetSpec bad = tight_spec();
  bad.mode_sigma = 0.0;
  CHECK_THROWS_AS(make_dataset(bad), ContractError);
  bad = tight_spec();
  bad.num_classes = 0;
  CHECK_THROWS_AS(make_dataset(bad), ContractError);
}
