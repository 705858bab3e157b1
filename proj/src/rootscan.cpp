#include "slrsm/rootscan.hpp"

#include <algorithm>

namespace slrsm::rootscan {

namespace {
int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }
} // namespace

std::vector<double> uniform_grid(double hi, double step) {
    if (!(step > 0.0) || !(hi >= 0.0)) throw Error("rootscan: bad grid parameters");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(hi / step) + 2);
    for (long k = 0;; ++k) {
        const double x = static_cast<double>(k) * step;
        if (x > hi) break;
        grid.push_back(x);
    }
    if (grid.empty() || grid.back() < hi) grid.push_back(hi);
    return grid;
}

std::vector<Bracket> scan(const std::function<double(double)>& f, const std::vector<double>& grid,
                          std::vector<double>* skipped) {
    std::vector<Bracket> brackets;
    bool have_prev = false;
    double prev_x = 0.0, prev_f = 0.0;

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        const double fx = f(x);
        if (std::isnan(fx)) {
            if (skipped) skipped->push_back(x);
            have_prev = false; // never bracket across an undefined gap
            continue;
        }
        if (fx == 0.0) {
            // Exact zero on the grid: bracket half a spacing to either side.
            const double h_left = i > 0 ? (x - grid[i - 1]) / 2.0 : 0.0;
            const double h_right = i + 1 < grid.size() ? (grid[i + 1] - x) / 2.0 : 0.0;
            const double h = std::max(h_left, h_right);
            if (h > 0.0) {
                const double lo = x - h, hi = x + h;
                const double f_lo = f(lo), f_hi = f(hi);
                if (!std::isnan(f_lo) && !std::isnan(f_hi) && sign_of(f_lo) * sign_of(f_hi) < 0)
                    brackets.push_back({lo, hi, f_lo, f_hi});
            }
            have_prev = false; // neighbouring products with 0 carry no sign change
            continue;
        }
        if (have_prev && sign_of(prev_f) * sign_of(fx) < 0)
            brackets.push_back({prev_x, x, prev_f, fx});
        have_prev = true;
        prev_x = x;
        prev_f = fx;
    }
    return brackets;
}

double bisect(const std::function<double(double)>& f, Bracket b, double width_tol,
              double residual_tol) {
    if (sign_of(b.f_lo) * sign_of(b.f_hi) >= 0)
        throw Error("rootscan: bisect requires a sign-change bracket");

    double mid = b.lo + (b.hi - b.lo) / 2.0;
    for (;;) {
        if (mid == b.lo || mid == b.hi) return mid; // floating-point resolution reached
        const double fm = f(mid);
        if (std::isnan(fm)) throw Error("rootscan: function undefined inside bracket");
        if (fm == 0.0) return mid;
        if (sign_of(fm) == sign_of(b.f_lo)) {
            b.lo = mid;
            b.f_lo = fm;
        } else {
            b.hi = mid;
            b.f_hi = fm;
        }
        if (b.hi - b.lo <= width_tol && std::fabs(fm) <= residual_tol) return mid;
        mid = b.lo + (b.hi - b.lo) / 2.0;
    }
}

} // namespace slrsm::rootscan
