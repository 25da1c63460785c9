#ifndef PITCHGUARD_GLM_HPP
#define PITCHGUARD_GLM_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "pitchguard/linalg.hpp"
#include "pitchguard/table.hpp"

namespace pitchguard {

enum class GlmFamily { Linear, Poisson, Logistic };

const char* to_string(GlmFamily f);

// Model matrix with an intercept column first. Categorical columns are
// one-hot encoded with the lexicographically first level as the dropped
// reference, in deterministic column order.
struct DesignMatrix {
    linalg::Matrix x;
    std::vector<std::string> names; // names[0] == "(intercept)"
    // factor name -> (level, column) pairs for the encoded levels
    std::map<std::string, std::vector<std::pair<std::string, std::size_t>>> factor_columns;

    std::size_t n() const { return x.rows(); }
    std::size_t k() const { return x.cols(); }
};

// terms are column names of `table`; response must not appear among them.
DesignMatrix build_design(const DataTable& table, std::span<const std::string> terms);

struct GlmFit {
    GlmFamily family = GlmFamily::Linear;
    double lambda = 0.0; // ridge penalty on non-intercept coefficients
    std::vector<std::string> names;
    linalg::Vector coefficients;
    linalg::Vector fitted;             // mu_i
    linalg::Vector response_residuals; // y - mu
    linalg::Vector deviance_residuals; // sum of squares equals the deviance
    double deviance = 0.0;
    double log_likelihood = 0.0;
    bool converged = false;
    int iterations = 0;
};

// IRLS maximum likelihood, log link. Convergence when the relative deviance
// change drops below 1e-10; at most 100 iterations with step-halving.
// Nonconvergence is reported via converged=false, not thrown.
GlmFit poisson_fit(const DesignMatrix& x, std::span<const double> y);

// Maximizes log-likelihood - lambda * ||b||^2 over the non-intercept
// coefficients; the intercept is never penalized.
GlmFit ridge_logistic_fit(const DesignMatrix& x, std::span<const double> y, double lambda);

// Ordinary least squares (identity link, Gaussian); deviance is the SSE.
GlmFit linear_fit(const DesignMatrix& x, std::span<const double> y);

// Refits the family/penalty recorded in `like`.
GlmFit refit_like(const GlmFit& like, const DesignMatrix& x, std::span<const double> y);

linalg::Vector deviance_residuals(const GlmFit& fit);

// Eq.-28-style sandwich (X'X)^{-1} X' diag(e_i^2) X (X'X)^{-1} with
// squared response residuals; returns the square roots of the diagonal.
linalg::Vector white_robust_se(const GlmFit& fit, const DesignMatrix& x);

// Literal leave-one-out refits: D_i = sum_j (fitted_j - fitted_j(i))^2 /
// (k * MSE) with MSE = SSE / (n - k). No hat-matrix shortcut.
linalg::Vector cooks_distance(const GlmFit& fit, const DesignMatrix& x, std::span<const double> y,
                              unsigned jobs = 1);

struct LrTestResult {
    double chi2 = 0.0;
    int df = 0;
    double p = 1.0;
};

// Likelihood-ratio test of nested fits (reduced columns must be a subset of
// the full model's columns, same family and sample size).
LrTestResult lr_test(const GlmFit& full, const GlmFit& reduced);

} // namespace pitchguard

#endif
