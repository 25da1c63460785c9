#include <doctest.h>

#include <vector>

#include "pitchguard/dtw.hpp"
#include "pitchguard/error.hpp"
#include "pitchguard/rng.hpp"

using namespace pitchguard;

namespace {

// all sequences of length 1..max_len over {0,1,2}
std::vector<std::vector<double>> small_alphabet_sequences(int max_len) {
    std::vector<std::vector<double>> out;
    for (int len = 1; len <= max_len; ++len) {
        int total = 1;
        for (int i = 0; i < len; ++i) total *= 3;
        for (int code = 0; code < total; ++code) {
            std::vector<double> seq(len);
            int c = code;
            for (int i = 0; i < len; ++i) {
                seq[i] = c % 3;
                c /= 3;
            }
            out.push_back(std::move(seq));
        }
    }
    return out;
}

bool path_is_valid(const WarpResult& w, std::size_t n, std::size_t m) {
    if (w.path.empty()) return false;
    if (w.path.front() != std::pair<int, int>(1, 1)) return false;
    if (w.path.back() != std::pair<int, int>(static_cast<int>(n), static_cast<int>(m)))
        return false;
    for (std::size_t s = 1; s < w.path.size(); ++s) {
        const int di = w.path[s].first - w.path[s - 1].first;
        const int dj = w.path[s].second - w.path[s - 1].second;
        const bool ok = (di == 1 && dj == 0) || (di == 0 && dj == 1) || (di == 1 && dj == 1);
        if (!ok) return false;
    }
    return true;
}

double path_cost(const WarpResult& w, const std::vector<double>& r, const std::vector<double>& l) {
    double c = 0.0;
    for (const auto& [i, j] : w.path) c += std::abs(r[i - 1] - l[j - 1]);
    return c;
}

} // namespace

TEST_CASE("identical singletons") {
    const WarpResult w = dtw_distance(std::vector<double>{5.0}, std::vector<double>{5.0});
    CHECK(w.distance == 0.0);
    REQUIRE(w.path.size() == 1);
    CHECK(w.path[0] == std::pair<int, int>(1, 1));
}

TEST_CASE("identity: dtw(x, x) = 0") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(1 + rng.uniform_index(30));
        for (auto& v : x) v = rng.uniform(0.0, 120.0);
        CHECK(dtw_distance(x, x).distance == 0.0);
    }
}

TEST_CASE("worked 3x2 example") {
    const std::vector<double> r{1, 2, 3};
    const std::vector<double> l{2, 3};
    const WarpResult w = dtw_distance(r, l);
    CHECK(w.distance == doctest::Approx(1.0));
    REQUIRE(w.path.size() == 3);
    CHECK(w.path[0] == std::pair<int, int>(1, 1));
    CHECK(w.path[1] == std::pair<int, int>(2, 1));
    CHECK(w.path[2] == std::pair<int, int>(3, 2));
}

TEST_CASE("brute-force basics") {
    CHECK(dtw_bruteforce(std::vector<double>{0.0}, std::vector<double>{9.0}) == 9.0);
    CHECK(dtw_bruteforce(std::vector<double>{0.0, 0.0}, std::vector<double>{0.0}) == 0.0);
    CHECK_THROWS_AS(dtw_bruteforce(std::vector<double>(7, 0.0), std::vector<double>(6, 0.0)),
                    TooLargeError);
}

TEST_CASE("oracle equivalence over the {0,1,2} alphabet, lengths <= 3") {
    // full sweep of lengths <= 5 runs in the acceptance suite
    const auto seqs = small_alphabet_sequences(3);
    for (const auto& r : seqs) {
        for (const auto& l : seqs) {
            const WarpResult w = dtw_distance(r, l);
            CHECK(w.distance == dtw_bruteforce(r, l));
            CHECK(path_is_valid(w, r.size(), l.size()));
            CHECK(path_cost(w, r, l) == doctest::Approx(w.distance).epsilon(1e-12));
        }
    }
}

TEST_CASE("symmetry of the distance") {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> a(1 + rng.uniform_index(12));
        std::vector<double> b(1 + rng.uniform_index(12));
        for (auto& v : a) v = rng.uniform(0.0, 10.0);
        for (auto& v : b) v = rng.uniform(0.0, 10.0);
        CHECK(dtw_distance(a, b).distance == doctest::Approx(dtw_distance(b, a).distance));
    }
}

TEST_CASE("path realizes the reported distance on random inputs") {
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> a(1 + rng.uniform_index(15));
        std::vector<double> b(1 + rng.uniform_index(15));
        for (auto& v : a) v = rng.uniform(0.0, 10.0);
        for (auto& v : b) v = rng.uniform(0.0, 10.0);
        const WarpResult w = dtw_distance(a, b);
        CHECK(path_is_valid(w, a.size(), b.size()));
        CHECK(path_cost(w, a, b) == doctest::Approx(w.distance).epsilon(1e-12));
    }
}

TEST_CASE("empty and non-finite inputs are rejected") {
    CHECK_THROWS_AS(dtw_distance(std::vector<double>{}, std::vector<double>{1.0}),
                    EmptySequenceError);
    CHECK_THROWS_AS(
        dtw_distance(std::vector<double>{std::nan("")}, std::vector<double>{1.0}),
        ValidationError);
}
