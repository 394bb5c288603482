#include "tcgan/schedule.hpp"

#include <cstdio>

#include "tcgan/errors.hpp"

namespace tcgan {

double lambda_at(const TransitionSchedule& schedule, long t) {
  if (t <= schedule.t_start) return 0.0;
  if (t >= schedule.t_end) return schedule.clip_max;
  const double ramp = static_cast<double>(t - schedule.t_start) /
                      static_cast<double>(schedule.t_end - schedule.t_start);
  return ramp < schedule.clip_max ? ramp : schedule.clip_max;
}

std::vector<std::pair<long, double>> schedule_curve(
    const TransitionSchedule& schedule, long stride) {
  if (stride < 1) throw ContractError("schedule_curve: stride must be >= 1");
  std::vector<std::pair<long, double>> rows;
  for (long t = 0; t <= schedule.t_max; t += stride)
    rows.emplace_back(t, lambda_at(schedule, t));
  if (rows.empty() || rows.back().first != schedule.t_max)
    rows.emplace_back(schedule.t_max, lambda_at(schedule, schedule.t_max));
  return rows;
}

void write_schedule_csv(std::ostream& os, const TransitionSchedule& schedule,
                        long stride) {
  os << "t,lambda\n";
  char buf[64];
  for (const auto& [t, lam] : schedule_curve(schedule, stride)) {
    std::snprintf(buf, sizeof(buf), "%ld,%.17g\n", t, lam);
    os << buf;
  }
}

void validate_schedule(const TransitionSchedule& schedule) {
  if (schedule.t_start < 0)
    throw ContractError("schedule: t_start must be non-negative");
  if (schedule.t_start >= schedule.t_end)
    throw ContractError("schedule: t_start must precede t_end");
  if (!(schedule.clip_max > 0.0 && schedule.clip_max <= 1.0))
    throw ContractError("schedule: clip_max must lie in (0, 1]");
  if (schedule.t_max < 1)
    throw ContractError("schedule: t_max must be positive");
}

}  // namespace tcgan
