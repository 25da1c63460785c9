#ifndef PITCHGUARD_DTW_HPP
#define PITCHGUARD_DTW_HPP

#include <span>
#include <utility>
#include <vector>

namespace pitchguard {

// Optimal warping alignment of two sequences. Indices are 1-based; the path
// starts at (1,1), ends at (n,m), and each step is (+1,0), (0,+1) or (+1,+1).
struct WarpResult {
    double distance = 0.0;
    std::vector<std::pair<int, int>> path;
};

// Minimum accumulated |r_i - l_j| over all monotone boundary-respecting
// paths, by dynamic programming. Ties during backtracking prefer the
// diagonal predecessor, then (i-1,j), then (i,j-1).
WarpResult dtw_distance(std::span<const double> r, std::span<const double> l);

// Verification oracle: explicit enumeration of every monotone path.
// Restricted to n*m <= 36.
double dtw_bruteforce(std::span<const double> r, std::span<const double> l);

} // namespace pitchguard

#endif
