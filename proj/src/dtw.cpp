#include "pitchguard/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pitchguard/error.hpp"

namespace pitchguard {

WarpResult dtw_distance(std::span<const double> r, std::span<const double> l) {
    const std::size_t n = r.size();
    const std::size_t m = l.size();
    if (n == 0 || m == 0) throw EmptySequenceError();
    for (double v : r)
        if (!std::isfinite(v)) throw ValidationError("dtw input contains a non-finite value");
    for (double v : l)
        if (!std::isfinite(v)) throw ValidationError("dtw input contains a non-finite value");

    const double inf = std::numeric_limits<double>::infinity();
    // Accumulated-cost matrix with a virtual zero origin: D(0,0) = 0 and
    // infinite first row/column, so D(1,1) = d(r_1, l_1).
    std::vector<double> acc((n + 1) * (m + 1), inf);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return acc[i * (m + 1) + j]; };
    at(0, 0) = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            const double cost = std::abs(r[i - 1] - l[j - 1]);
            at(i, j) = cost + std::min({at(i - 1, j - 1), at(i - 1, j), at(i, j - 1)});
        }
    }

    WarpResult out;
    out.distance = at(n, m);
    std::size_t i = n, j = m;
    out.path.emplace_back(static_cast<int>(i), static_cast<int>(j));
    while (i > 1 || j > 1) {
        const double diag = at(i - 1, j - 1);
        const double up = at(i - 1, j);
        const double left = at(i, j - 1);
        const double best = std::min({diag, up, left});
        if (diag == best) {
            --i;
            --j;
        } else if (up == best) {
            --i;
        } else {
            --j;
        }
        out.path.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
    std::reverse(out.path.begin(), out.path.end());
    return out;
}

namespace {

double enumerate_paths(std::span<const double> r, std::span<const double> l, std::size_t i,
                       std::size_t j, double acc) {
    acc += std::abs(r[i] - l[j]);
    if (i + 1 == r.size() && j + 1 == l.size()) return acc;
    double best = std::numeric_limits<double>::infinity();
    if (i + 1 < r.size() && j + 1 < l.size())
        best = std::min(best, enumerate_paths(r, l, i + 1, j + 1, acc));
    if (i + 1 < r.size()) best = std::min(best, enumerate_paths(r, l, i + 1, j, acc));
    if (j + 1 < l.size()) best = std::min(best, enumerate_paths(r, l, i, j + 1, acc));
    return best;
}

} // namespace

double dtw_bruteforce(std::span<const double> r, std::span<const double> l) {
    if (r.empty() || l.empty()) throw EmptySequenceError();
    if (r.size() * l.size() > 36) throw TooLargeError(r.size(), l.size());
    return enumerate_paths(r, l, 0, 0, 0.0);
}

} // namespace pitchguard
