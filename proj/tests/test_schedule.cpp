#include <sstream>

#include "doctest.h"
#include "tcgan/errors.hpp"
#include "tcgan/rng.hpp"
#include "tcgan/schedule.hpp"

using namespace tcgan;

TEST_CASE("lambda ramp hits the published boundary values exactly") {
  // T_s = 2000, T_e = 4000
  TransitionSchedule s{2000, 4000, 8000, 1.0};
  CHECK(lambda_at(s, 0) == 0.0);
  CHECK(lambda_at(s, 2000) == 0.0);
  CHECK(lambda_at(s, 3000) == 0.5);
  CHECK(lambda_at(s, 4000) == 1.0);
  CHECK(lambda_at(s, 8000) == 1.0);
}

TEST_CASE("clip variant caps the plateau") {
  TransitionSchedule s{2000, 4000, 8000, 0.2};
  CHECK(lambda_at(s, 5000) == 0.2);
  CHECK(lambda_at(s, 2500) == 0.2);  // ramp value 0.25 capped
  CHECK(lambda_at(s, 2100) == doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("monotone and bounded for random schedules") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    TransitionSchedule s;
    s.t_start = static_cast<long>(rng.uniform_index(5000));
    s.t_end = s.t_start + 1 + static_cast<long>(rng.uniform_index(5000));
    s.t_max = s.t_end + static_cast<long>(rng.uniform_index(5000));
    s.clip_max = 0.05 + 0.95 * rng.uniform();
    double prev = -1.0;
    for (long t = 0; t <= s.t_max; t += 37) {
      const double lam = lambda_at(s, t);
      CHECK(lam >= 0.0);
      CHECK(lam <= s.clip_max);
      CHECK(lam >= prev);
      prev = lam;
    }
    CHECK(lambda_at(s, s.t_end) == s.clip_max);
    CHECK(lambda_at(s, s.t_max) == s.clip_max);
  }
}

TEST_CASE("degenerate schedules behave as step functions") {
  TransitionSchedule never{601, 602, 600, 1.0};  // t_start past t_max
  for (long t = 0; t <= 600; ++t) CHECK(lambda_at(never, t) == 0.0);
  TransitionSchedule always{0, 1, 600, 1.0};
  for (long t = 1; t <= 600; ++t) CHECK(lambda_at(always, t) == 1.0);
}

TEST_CASE("curve emission endpoints and stride") {
  TransitionSchedule s{1000, 2000, 6000, 1.0};
  const auto two_rows = schedule_curve(s, 6000);
  REQUIRE(two_rows.size() == 2);
  CHECK(two_rows.front().first == 0);
  CHECK(two_rows.front().second == 0.0);
  CHECK(two_rows.back().first == 6000);
  CHECK(two_rows.back().second == 1.0);
  CHECK_THROWS_AS(schedule_curve(s, 0), ContractError);
}

TEST_CASE("curve is piecewise linear with kinks only at the endpoints") {
  TransitionSchedule s{1000, 2000, 6000, 1.0};
  const long stride = 100;
  const auto rows = schedule_curve(s, stride);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const double second_diff =
        rows[i].second - 2.0 * rows[i - 1].second + rows[i - 2].second;
    const long mid = rows[i - 1].first;
    if (mid == s.t_start || mid == s.t_end)
      CHECK(std::abs(second_diff) > 1e-9);
    else
      CHECK(std::abs(second_diff) < 1e-12);
  }
}

TEST_CASE("csv emission format") {
  TransitionSchedule s{1, 2, 4, 1.0};
  std::ostringstream os;
  write_schedule_csv(os, s, 1);
  CHECK(os.str() == "t,lambda\n0,0\n1,0\n2,1\n3,1\n4,1\n");
}

TEST_CASE("strict validation for user-facing schedules") {
  CHECK_THROWS_AS(validate_schedule({-1, 10, 20, 1.0}), ContractError);
  CHECK_THROWS_AS(validate_schedule({10, 10, 20, 1.0}), ContractError);
  CHECK_THROWS_AS(validate_schedule({0, 10, 20, 0.0}), ContractError);
  CHECK_THROWS_AS(validate_schedule({0, 10, 20, 1.5}), ContractError);
  CHECK_NOTHROW(validate_schedule({0, 10, 20, 0.2}));
}
