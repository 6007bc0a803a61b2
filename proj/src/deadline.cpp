#include "conicmin/deadline.hpp"

#include <chrono>
#include <optional>

namespace conicmin {

namespace {
using Clock = std::chrono::steady_clock;
thread_local std::optional<Clock::time_point> t_deadline;
thread_local unsigned t_tick = 0;
}  // namespace

void set_step_deadline(double seconds_from_now) {
  t_deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(seconds_from_now));
  t_tick = 0;
}

void clear_step_deadline() { t_deadline.reset(); }

void check_deadline() {
  if (!t_deadline) return;
  if ((++t_tick & 63u) != 0) return;
  if (Clock::now() > *t_deadline) throw StepTimeoutError();
}

}  // namespace conicmin
