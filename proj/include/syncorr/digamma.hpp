#pragma once

namespace syncorr {

// Digamma function for x > 0: upward recurrence to x >= 10, then the
// asymptotic series. Relative error below 1e-13 on (0, inf).
double digamma(double x);

}  // namespace syncorr
