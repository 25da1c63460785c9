#include <doctest.h>

#include <cmath>

#include "pitchguard/error.hpp"
#include "pitchguard/linalg.hpp"
#include "pitchguard/rng.hpp"
#include "test_support.hpp"

using namespace pitchguard;
using namespace pitchguard::linalg;

namespace {

double solve_residual(const Matrix& a, const Vector& x, const Vector& b) {
    const Vector ax = a * x;
    double worst = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) worst = std::max(worst, std::abs(ax[i] - b[i]));
    return worst;
}

} // namespace

TEST_CASE("cholesky solve matches explicit inversion on random SPD systems") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 8;
        const Matrix a = test_support::random_spd(n, rng);
        Vector b(n);
        for (auto& v : b) v = rng.uniform(-2.0, 2.0);

        SymmetricSolver solver(a);
        CHECK(solver.used_cholesky());
        const Vector x = solver.solve(b);
        const Vector expected = test_support::solve_by_inverse(a, b);
        for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(expected[i]).epsilon(1e-9));
        CHECK(solve_residual(a, x, b) < 1e-8);
    }
}

TEST_CASE("bunch-kaufman handles indefinite symmetric systems") {
    Rng rng(7);
    int indefinite_seen = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const Matrix a = test_support::random_symmetric(n, rng);
        if (min_eigenvalue(a) > -1e-3) continue; // want genuinely indefinite cases
        ++indefinite_seen;
        Vector b(n);
        for (auto& v : b) v = rng.uniform(-2.0, 2.0);

        SymmetricSolver solver(a);
        CHECK_FALSE(solver.used_cholesky());
        const Vector x = solver.solve(b);
        const Vector expected = test_support::solve_by_inverse(a, b);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(x[i] == doctest::Approx(expected[i]).epsilon(1e-7));
    }
    CHECK(indefinite_seen > 20);
}

TEST_CASE("bunch-kaufman solves the zero-diagonal exchange matrix") {
    Matrix a(2, 2);
    a(0, 1) = a(1, 0) = 1.0;
    SymmetricSolver solver(a);
    const Vector x = solver.solve({3.0, 5.0});
    CHECK(x[0] == doctest::Approx(5.0));
    CHECK(x[1] == doctest::Approx(3.0));
}

TEST_CASE("singular matrix is rejected") {
    Matrix a(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = a(1, 0) = 2.0;
    a(1, 1) = 4.0; // rank 1
    CHECK_THROWS_AS(SymmetricSolver{a}, SingularSystemError);
}

TEST_CASE("jacobi eigendecomposition reconstructs the matrix") {
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const Matrix a = test_support::random_symmetric(n, rng, 2.0);
        const EigenDecomposition e = jacobi_eigen(a);

        // A = V diag(values) V^T
        Matrix lambda(n, n);
        for (std::size_t i = 0; i < n; ++i) lambda(i, i) = e.values[i];
        const Matrix rebuilt = e.vectors * lambda * transpose(e.vectors);
        const double scale = std::max(1e-30, max_abs(a));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                CHECK(std::abs(rebuilt(i, j) - a(i, j)) <= 1e-9 * scale);

        // V orthonormal
        const Matrix vtv = transpose(e.vectors) * e.vectors;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                CHECK(std::abs(vtv(i, j) - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("known 2x2 eigenvalues") {
    Matrix a(2, 2);
    a(0, 0) = a(1, 1) = 1.0;
    a(0, 1) = a(1, 0) = 2.0;
    const EigenDecomposition e = jacobi_eigen_sorted(a);
    CHECK(e.values[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(min_eigenvalue(a) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("sorted eigenvalues are non-increasing") {
    Rng rng(11);
    const Matrix a = test_support::random_symmetric(7, rng);
    const EigenDecomposition e = jacobi_eigen_sorted(a);
    for (std::size_t i = 1; i < e.values.size(); ++i) CHECK(e.values[i - 1] >= e.values[i]);
}
