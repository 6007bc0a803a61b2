// Cooperative per-thread deadline.  Long-running passes call
// check_deadline() in their outer loops; arming is the caller's choice
// (the search arms it from --timeout / --step-timeout), so standalone
// use of the library never pays more than a counter increment.
#pragma once

#include <stdexcept>

namespace conicmin {

struct StepTimeoutError : std::runtime_error {
  StepTimeoutError() : std::runtime_error("minimisation step deadline exceeded") {}
};

void set_step_deadline(double seconds_from_now);
void clear_step_deadline();
// Throws StepTimeoutError once the armed deadline has passed; cheap
// (clock read every 64th call) and a no-op when disarmed.
void check_deadline();

}  // namespace conicmin
