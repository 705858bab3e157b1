#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "slrsm/errors.hpp"

namespace slrsm::rootscan {

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double f_lo = 0.0;
    double f_hi = 0.0;
};

/// Sign changes (and exact zeros) of f between consecutive grid points.
/// An exact zero at a grid point becomes a bracket of one grid spacing
/// centered there, provided the neighbours straddle it with opposite signs.
/// Grid points where f throws the Skip exception type are left out.
std::vector<Bracket> scan(const std::function<double(double)>& f, const std::vector<double>& grid,
                          std::vector<double>* skipped = nullptr);

/// Bisect a sign-change bracket until |hi - lo| <= width_tol and
/// |f(mid)| <= residual_tol (or the midpoint stops moving). Iterates never
/// leave the initial bracket.
double bisect(const std::function<double(double)>& f, Bracket b, double width_tol,
              double residual_tol);

/// Uniform grid {0, step, 2 step, ...} up to and including hi.
std::vector<double> uniform_grid(double hi, double step);

} // namespace slrsm::rootscan
