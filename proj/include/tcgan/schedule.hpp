#pragma once

#include <ostream>
#include <utility>
#include <vector>

namespace tcgan {

// Piecewise-linear conditioning ramp: 0 until t_start, linear up to clip_max
// by t_end, flat afterwards. clip_max caps the plateau below 1 when wanted.
struct TransitionSchedule {
  long t_start = 1000;
  long t_end = 2000;
  long t_max = 6000;
  double clip_max = 1.0;
};

// Total in t; degenerate schedules (t_start >= t_end) act as a step function,
// which the trajectory-equivalence tests rely on.
double lambda_at(const TransitionSchedule& schedule, long t);

// Rows (t, lambda) for t = 0, stride, 2*stride, ..., t_max (t_max always
// included as the last row).
std::vector<std::pair<long, double>> schedule_curve(
    const TransitionSchedule& schedule, long stride);

// CSV rows "t,lambda" with a header line
void write_schedule_csv(std::ostream& os, const TransitionSchedule& schedule,
                        long stride);

// Strict invariants for user-facing configs (t_start >= 0, t_start < t_end,
// 0 < clip_max <= 1). Throws ContractError.
void validate_schedule(const TransitionSchedule& schedule);

}  // namespace tcgan
