#pragma once

#include <string>

#include "slrsm/errors.hpp"

namespace slrsm {

/// One eigenvalue problem: -y'' + q(x) y = mu^2 y on (0, pi) with
/// y'(0) = 0 = y(pi) and the interface jump y(d+0) = a y(d-0),
/// y'(d+0) = a^{-1} y'(d-0).
struct ProblemSpec {
    std::string q_source = "0";
    double a = 2.0;
    double d = 1.0;
    std::string label;
};

/// Throws Error unless 0 < d < pi and a > 0. a == 1 is allowed (the jump
/// degenerates to continuity); callers emit a warning for it.
void validate(const ProblemSpec& p);

} // namespace slrsm
