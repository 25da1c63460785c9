#include <doctest.h>

#include <cmath>
#include <vector>

#include "pitchguard/error.hpp"
#include "pitchguard/glm.hpp"
#include "pitchguard/rng.hpp"
#include "pitchguard/special_functions.hpp"
#include "test_support.hpp"

using namespace pitchguard;
using linalg::Matrix;
using linalg::Vector;

namespace {

DesignMatrix design_from_columns(const std::vector<Vector>& columns,
                                 const std::vector<std::string>& names) {
    DesignMatrix d;
    const std::size_t n = columns.front().size();
    d.x = Matrix(n, columns.size() + 1);
    d.names.push_back("(intercept)");
    for (std::size_t r = 0; r < n; ++r) d.x(r, 0) = 1.0;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        d.names.push_back(names[c]);
        for (std::size_t r = 0; r < n; ++r) d.x(r, c + 1) = columns[c][r];
    }
    return d;
}

DesignMatrix intercept_design(std::size_t n) {
    DesignMatrix d;
    d.x = Matrix(n, 1, 1.0);
    d.names.push_back("(intercept)");
    return d;
}

// Independent Newton oracle for Poisson maximum likelihood; gradient and
// Hessian assembled directly, solved via the Gauss-Jordan test inverse.
Vector poisson_newton_oracle(const Matrix& x, const Vector& y) {
    const std::size_t n = x.rows();
    const std::size_t k = x.cols();
    Vector beta(k, 0.0);
    for (int iter = 0; iter < 200; ++iter) {
        Vector mu(n);
        for (std::size_t i = 0; i < n; ++i) {
            double eta = 0.0;
            for (std::size_t j = 0; j < k; ++j) eta += x(i, j) * beta[j];
            mu[i] = std::exp(eta);
        }
        Vector grad(k, 0.0);
        Matrix hess(k, k);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t a = 0; a < k; ++a) {
                grad[a] += (y[i] - mu[i]) * x(i, a);
                for (std::size_t b = 0; b < k; ++b) hess(a, b) += mu[i] * x(i, a) * x(i, b);
            }
        }
        const Vector step = test_support::gauss_jordan_inverse(hess) * grad;
        double norm = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            beta[j] += step[j];
            norm = std::max(norm, std::abs(step[j]));
        }
        if (norm < 1e-14) break;
    }
    return beta;
}

} // namespace

TEST_CASE("intercept-only poisson recovers ln(mean)") {
    const std::vector<double> y{1, 2, 3};
    const GlmFit fit = poisson_fit(intercept_design(3), y);
    CHECK(fit.converged);
    CHECK(fit.coefficients[0] == doctest::Approx(std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("constant response gives zero deviance") {
    const std::vector<double> y{4, 4, 4, 4};
    const GlmFit fit = poisson_fit(intercept_design(4), y);
    CHECK(fit.deviance == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("poisson fit matches the independent Newton oracle") {
    Rng rng(101);
    const std::size_t n = 40;
    Vector x1(n), x2(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x1[i] = rng.uniform(-1.0, 1.0);
        x2[i] = rng.uniform(-1.0, 1.0);
        const double mu = std::exp(0.4 + 0.8 * x1[i] - 0.5 * x2[i]);
        // small counts drawn by inversion
        double u = rng.uniform();
        double p = std::exp(-mu);
        double cum = p;
        int count = 0;
        while (u > cum && count < 60) {
            ++count;
            p *= mu / count;
            cum += p;
        }
        y[i] = count;
    }
    const DesignMatrix d = design_from_columns({x1, x2}, {"x1", "x2"});
    const GlmFit fit = poisson_fit(d, y);
    REQUIRE(fit.converged);
    const Vector oracle = poisson_newton_oracle(d.x, Vector(y.begin(), y.end()));
    for (std::size_t j = 0; j < 3; ++j)
        CHECK(fit.coefficients[j] == doctest::Approx(oracle[j]).epsilon(1e-8));

    // score equations at the optimum: X'(y - mu) = 0
    for (std::size_t j = 0; j < 3; ++j) {
        double score = 0.0;
        for (std::size_t i = 0; i < n; ++i) score += d.x(i, j) * (y[i] - fit.fitted[i]);
        CHECK(std::abs(score) < 1e-6);
    }
}

TEST_CASE("poisson rejects invalid responses") {
    CHECK_THROWS_AS(poisson_fit(intercept_design(2), std::vector<double>{1.0, -2.0}),
                    ValidationError);
    CHECK_THROWS_AS(poisson_fit(intercept_design(2), std::vector<double>{1.0, 2.5}),
                    ValidationError);
}

TEST_CASE("deviance equals the sum of squared deviance residuals") {
    Rng rng(55);
    const std::size_t n = 25;
    Vector x(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = rng.uniform(-1.0, 1.0);
        y[i] = std::floor(rng.uniform(0.0, 6.0));
    }
    const GlmFit fit = poisson_fit(design_from_columns({x}, {"x"}), y);
    double sum = 0.0;
    for (double d : deviance_residuals(fit)) sum += d * d;
    CHECK(sum == doctest::Approx(fit.deviance).epsilon(1e-8));

    // y = 0 cell: d^2 = 2*mu
    for (std::size_t i = 0; i < n; ++i) {
        if (y[i] == 0.0) {
            const double d = fit.deviance_residuals[i];
            CHECK(d * d == doctest::Approx(2.0 * fit.fitted[i]).epsilon(1e-10));
            CHECK(d < 0.0);
        }
    }
}

TEST_CASE("ridge logistic: infinite-penalty limit") {
    Rng rng(7);
    const std::size_t n = 30;
    Vector x(n);
    std::vector<double> y(n);
    double ybar = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = rng.uniform(-2.0, 2.0);
        y[i] = rng.bernoulli(0.4) ? 1.0 : 0.0;
        ybar += y[i];
    }
    ybar /= static_cast<double>(n);
    const GlmFit fit = ridge_logistic_fit(design_from_columns({x}, {"x"}), y, 1e8);
    CHECK(fit.converged);
    CHECK(std::abs(fit.coefficients[1]) < 1e-3);
    CHECK(fit.coefficients[0] == doctest::Approx(std::log(ybar / (1.0 - ybar))).epsilon(1e-3));
}

TEST_CASE("ridge logistic: separation reported as nonconvergence") {
    const Vector x{-2, -1, 1, 2};
    const std::vector<double> y{0, 0, 1, 1};
    const GlmFit fit = ridge_logistic_fit(design_from_columns({x}, {"x"}), y, 0.0);
    CHECK_FALSE(fit.converged);
}

TEST_CASE("ridge logistic: symmetric data gives zero intercept") {
    const Vector x{-1, -1, 1, 1};
    const std::vector<double> y{0, 0, 1, 1};
    const GlmFit fit = ridge_logistic_fit(design_from_columns({x}, {"x"}), y, 1.0);
    CHECK(fit.converged);
    CHECK(fit.coefficients[0] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("ridge path: coefficient norm shrinks monotonically") {
    Rng rng(63);
    const std::size_t n = 40;
    Vector x1(n), x2(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x1[i] = rng.uniform(-1.0, 1.0);
        x2[i] = rng.uniform(-1.0, 1.0);
        y[i] = rng.bernoulli(1.0 / (1.0 + std::exp(-(x1[i] + 0.5 * x2[i])))) ? 1.0 : 0.0;
    }
    const DesignMatrix d = design_from_columns({x1, x2}, {"x1", "x2"});
    double prev = 1e300;
    for (double lambda : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        const GlmFit fit = ridge_logistic_fit(d, y, lambda);
        double norm = 0.0;
        for (std::size_t j = 1; j < fit.coefficients.size(); ++j)
            norm += fit.coefficients[j] * fit.coefficients[j];
        CHECK(norm <= prev + 1e-12);
        prev = norm;
    }
}

TEST_CASE("white robust se: orthonormal design with unit residuals") {
    GlmFit fit;
    fit.family = GlmFamily::Linear;
    fit.response_residuals = {1.0, 1.0};
    DesignMatrix d;
    d.x = Matrix::identity(2);
    d.names = {"(intercept)", "x"};
    const Vector se = white_robust_se(fit, d);
    CHECK(se[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(se[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("white robust se: 3-point example matches explicit matrix arithmetic") {
    DesignMatrix d;
    d.x = Matrix(3, 2);
    d.names = {"(intercept)", "x"};
    const Vector xs{0.0, 1.0, 2.0};
    for (std::size_t i = 0; i < 3; ++i) {
        d.x(i, 0) = 1.0;
        d.x(i, 1) = xs[i];
    }
    GlmFit fit;
    fit.family = GlmFamily::Linear;
    fit.response_residuals = {0.5, -1.0, 0.25};

    // independent route: explicit inverse and dense products
    const Matrix xt = linalg::transpose(d.x);
    const Matrix bread = test_support::gauss_jordan_inverse(xt * d.x);
    Matrix e2(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        e2(i, i) = fit.response_residuals[i] * fit.response_residuals[i];
    const Matrix sandwich = bread * (xt * e2 * d.x) * bread;

    const Vector se = white_robust_se(fit, d);
    CHECK(se[0] == doctest::Approx(std::sqrt(sandwich(0, 0))).epsilon(1e-10));
    CHECK(se[1] == doctest::Approx(std::sqrt(sandwich(1, 1))).epsilon(1e-10));
}

TEST_CASE("white robust se: scaling residuals by c scales se by c") {
    Rng rng(81);
    DesignMatrix d;
    d.x = Matrix(10, 2);
    d.names = {"(intercept)", "x"};
    GlmFit fit;
    fit.family = GlmFamily::Linear;
    fit.response_residuals.resize(10);
    for (std::size_t i = 0; i < 10; ++i) {
        d.x(i, 0) = 1.0;
        d.x(i, 1) = rng.uniform(-3.0, 3.0);
        fit.response_residuals[i] = rng.uniform(-1.0, 1.0);
    }
    const Vector se1 = white_robust_se(fit, d);
    for (auto& r : fit.response_residuals) r *= 2.5;
    const Vector se2 = white_robust_se(fit, d);
    for (std::size_t j = 0; j < 2; ++j)
        CHECK(se2[j] == doctest::Approx(2.5 * se1[j]).epsilon(1e-12));
}

TEST_CASE("cooks distance matches the hat-matrix identity on linear fits") {
    Rng rng(29);
    const std::size_t n = 12;
    Vector x(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = rng.uniform(0.0, 10.0);
        y[i] = 2.0 + 0.7 * x[i] + rng.normal(0.0, 1.0);
    }
    const DesignMatrix d = design_from_columns({x}, {"x"});
    const GlmFit fit = linear_fit(d, y);
    const Vector cooks = cooks_distance(fit, d, y);

    // closed form: D_i = e_i^2 h_ii / (k * MSE * (1 - h_ii)^2)
    const Matrix xt = linalg::transpose(d.x);
    const Matrix hat = d.x * test_support::gauss_jordan_inverse(xt * d.x) * xt;
    double sse = 0.0;
    for (double e : fit.response_residuals) sse += e * e;
    const double mse = sse / static_cast<double>(n - 2);
    for (std::size_t i = 0; i < n; ++i) {
        const double e = fit.response_residuals[i];
        const double h = hat(i, i);
        const double expected = e * e * h / (2.0 * mse * (1.0 - h) * (1.0 - h));
        CHECK(cooks[i] == doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("cooks distance: duplicated observations have low influence") {
    Vector x{1, 1, 1, 1, 4, 6};
    std::vector<double> y{2.05, 1.95, 2.0, 2.0, 5.1, 9.0};
    const DesignMatrix d = design_from_columns({x}, {"x"});
    const GlmFit fit = linear_fit(d, y);
    const Vector cooks = cooks_distance(fit, d, y);
    // duplicates at x=1 cover each other; each refit barely moves
    for (std::size_t i = 0; i < 4; ++i) CHECK(cooks[i] < 0.2);
}

TEST_CASE("cooks distance: refit failure carries the observation index") {
    // dropping the only point at x=5 leaves a constant column
    const Vector x{1, 1, 1, 5};
    const std::vector<double> y{2.1, 1.9, 2.0, 9.0};
    const DesignMatrix d = design_from_columns({x}, {"x"});
    const GlmFit fit = linear_fit(d, y);
    CHECK_THROWS_AS(cooks_distance(fit, d, y), RefitFailureError);
}

TEST_CASE("cooks distance: hand LOO on a 4-point linear fit") {
    const Vector x{0, 1, 2, 3};
    const std::vector<double> y{0.0, 1.2, 1.8, 3.4};
    const DesignMatrix d = design_from_columns({x}, {"x"});
    const GlmFit fit = linear_fit(d, y);
    const Vector cooks = cooks_distance(fit, d, y);

    // manual LOO refits via the oracle inverse
    double sse = 0.0;
    for (double e : fit.response_residuals) sse += e * e;
    const double mse = sse / 2.0;
    for (std::size_t drop = 0; drop < 4; ++drop) {
        Matrix xl(3, 2);
        Vector yl(3);
        std::size_t r = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            if (i == drop) continue;
            xl(r, 0) = 1.0;
            xl(r, 1) = x[i];
            yl[r] = y[i];
            ++r;
        }
        const Matrix xtl = linalg::transpose(xl);
        const Vector beta = test_support::gauss_jordan_inverse(xtl * xl) * (xtl * yl);
        double sum = 0.0;
        for (std::size_t j = 0; j < 4; ++j) {
            const double pred = beta[0] + beta[1] * x[j];
            sum += (fit.fitted[j] - pred) * (fit.fitted[j] - pred);
        }
        CHECK(cooks[drop] == doctest::Approx(sum / (2.0 * mse)).epsilon(1e-10));
    }
}

TEST_CASE("lr test basics") {
    Rng rng(17);
    const std::size_t n = 50;
    Vector x1(n), x2(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x1[i] = rng.uniform(-1.0, 1.0);
        x2[i] = rng.uniform(-1.0, 1.0);
        y[i] = std::floor(rng.uniform(0.0, 5.0));
    }
    const GlmFit full = poisson_fit(design_from_columns({x1, x2}, {"x1", "x2"}), y);
    const GlmFit reduced = poisson_fit(design_from_columns({x1}, {"x1"}), y);
    const GlmFit same = poisson_fit(design_from_columns({x1, x2}, {"x1", "x2"}), y);

    const LrTestResult identical = lr_test(full, same);
    CHECK(identical.chi2 == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(identical.df == 0);
    CHECK(identical.p == 1.0);

    const LrTestResult nested = lr_test(full, reduced);
    CHECK(nested.df == 1);
    CHECK(nested.chi2 >= 0.0);
    CHECK(nested.p >= 0.0);
    CHECK(nested.p <= 1.0);

    CHECK_THROWS_AS(lr_test(reduced, full), NotNestedError);
}

TEST_CASE("chi-square p-values match closed forms") {
    // df = 2: sf(x) = exp(-x/2) exactly
    for (double x : {0.5, 1.0, 3.0, 7.5}) {
        CHECK(chi_square_sf(x, 2) == doctest::Approx(std::exp(-x / 2.0)).epsilon(1e-12));
    }
    // df = 1: sf(x) = erfc(sqrt(x/2))
    for (double x : {0.1, 1.0, 3.841, 9.0}) {
        CHECK(chi_square_sf(x, 1) == doctest::Approx(std::erfc(std::sqrt(x / 2.0))).epsilon(1e-12));
    }
    // the classical 5% critical value
    CHECK(chi_square_sf(3.841, 1) == doctest::Approx(0.0500).epsilon(1e-3));
    CHECK(chi_square_sf(0.0, 2) == 1.0);
}

TEST_CASE("design matrix one-hot encoding drops the first level") {
    CsvTable csv;
    csv.header = {"y", "pos", "load"};
    csv.rows = {{"1", "mid", "3.5"}, {"0", "def", "2.0"}, {"2", "fwd", "1.0"}, {"1", "mid", "2.5"}};
    const DataTable table = DataTable::from_csv(csv);
    const std::vector<std::string> terms{"pos", "load"};
    const DesignMatrix d = build_design(table, terms);

    REQUIRE(d.names.size() == 4); // intercept, pos=fwd, pos=mid, load
    CHECK(d.names[0] == "(intercept)");
    CHECK(d.names[1] == "pos=fwd");
    CHECK(d.names[2] == "pos=mid");
    CHECK(d.names[3] == "load");
    CHECK(d.x(0, 2) == 1.0); // first row is mid
    CHECK(d.x(1, 1) == 0.0); // def is the reference level
    CHECK(d.x(1, 2) == 0.0);
}
