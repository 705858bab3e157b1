#include "slrsm/problem.hpp"

#include <numbers>

namespace slrsm {

void validate(const ProblemSpec& p) {
    if (p.q_source.empty()) throw Error("problem: q expression is empty");
    if (!(p.a > 0.0)) throw Error("problem: jump factor a must be positive");
    if (!(p.d > 0.0 && p.d < std::numbers::pi))
        throw Error("problem: interface point d must lie in (0, pi)");
}

} // namespace slrsm
