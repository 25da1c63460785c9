#include "pitchguard/glm.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pitchguard/error.hpp"
#include "pitchguard/parallel.hpp"
#include "pitchguard/special_functions.hpp"

namespace pitchguard {

const char* to_string(GlmFamily f) {
    switch (f) {
        case GlmFamily::Linear: return "linear";
        case GlmFamily::Poisson: return "poisson";
        case GlmFamily::Logistic: return "logistic";
    }
    return "?";
}

DesignMatrix build_design(const DataTable& table, std::span<const std::string> terms) {
    const std::size_t n = table.rows();
    if (n == 0) throw ValidationError("design matrix requires at least one row");

    struct Encoded {
        std::string name;
        linalg::Vector values;
    };
    std::vector<Encoded> cols;
    DesignMatrix design;

    for (const auto& term : terms) {
        const DataColumn& col = table.column(term);
        if (col.numeric) {
            cols.push_back({term, col.numbers});
        } else {
            std::set<std::string> levels(col.categories.begin(), col.categories.end());
            if (levels.size() < 2)
                throw ValidationError("factor '" + term + "' has a single level");
            auto it = levels.begin();
            ++it; // lexicographically first level is the reference
            for (; it != levels.end(); ++it) {
                Encoded e{term + "=" + *it, linalg::Vector(n, 0.0)};
                for (std::size_t r = 0; r < n; ++r)
                    if (col.categories[r] == *it) e.values[r] = 1.0;
                design.factor_columns[term].emplace_back(*it, cols.size() + 1);
                cols.push_back(std::move(e));
            }
        }
    }

    design.x = linalg::Matrix(n, cols.size() + 1);
    design.names.push_back("(intercept)");
    for (std::size_t r = 0; r < n; ++r) design.x(r, 0) = 1.0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        design.names.push_back(cols[c].name);
        bool any_nonzero = false;
        for (std::size_t r = 0; r < n; ++r) {
            design.x(r, c + 1) = cols[c].values[r];
            any_nonzero = any_nonzero || cols[c].values[r] != 0.0;
        }
        if (!any_nonzero)
            throw ValidationError("design column '" + cols[c].name + "' is all zero");
    }
    return design;
}

namespace {

double softplus(double eta) { return std::max(eta, 0.0) + std::log1p(std::exp(-std::abs(eta))); }

double logistic(double eta) { return 1.0 / (1.0 + std::exp(-eta)); }

linalg::Vector linear_predictor(const linalg::Matrix& x, const linalg::Vector& beta) {
    return x * beta;
}

// Solves (X'WX + 2*lambda*J) b = X'Wz; J zeroes the intercept entry.
linalg::Vector weighted_solve(const linalg::Matrix& x, const linalg::Vector& w,
                              const linalg::Vector& z, double lambda) {
    const std::size_t n = x.rows();
    const std::size_t k = x.cols();
    linalg::Matrix xtwx(k, k);
    linalg::Vector xtwz(k, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < k; ++i) {
            const double wxi = w[r] * x(r, i);
            xtwz[i] += wxi * z[r];
            for (std::size_t j = i; j < k; ++j) xtwx(i, j) += wxi * x(r, j);
        }
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) xtwx(j, i) = xtwx(i, j);
    for (std::size_t i = 1; i < k; ++i) xtwx(i, i) += 2.0 * lambda;
    try {
        return linalg::SymmetricSolver(xtwx).solve(xtwz);
    } catch (const SingularSystemError& e) {
        throw RankDeficientError(std::string("weighted least squares: ") + e.what());
    }
}

double poisson_deviance(std::span<const double> y, const linalg::Vector& mu) {
    double d = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] > 0.0) d += y[i] * std::log(y[i] / mu[i]) - (y[i] - mu[i]);
        else d += mu[i];
    }
    return 2.0 * d;
}

double poisson_loglik(std::span<const double> y, const linalg::Vector& mu) {
    double l = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        l += y[i] * std::log(mu[i]) - mu[i] - std::lgamma(y[i] + 1.0);
    return l;
}

double logistic_loglik(std::span<const double> y, const linalg::Vector& eta) {
    double l = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) l += y[i] * eta[i] - softplus(eta[i]);
    return l;
}

void fill_residuals(GlmFit& fit, std::span<const double> y) {
    const std::size_t n = y.size();
    fit.response_residuals.resize(n);
    fit.deviance_residuals.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double mu = fit.fitted[i];
        fit.response_residuals[i] = y[i] - mu;
        double d2 = 0.0;
        switch (fit.family) {
            case GlmFamily::Linear:
                fit.deviance_residuals[i] = y[i] - mu;
                continue;
            case GlmFamily::Poisson:
                d2 = 2.0 * (y[i] > 0.0 ? y[i] * std::log(y[i] / mu) - (y[i] - mu) : mu);
                break;
            case GlmFamily::Logistic: {
                const double p = std::clamp(mu, 1e-300, 1.0 - 1e-16);
                d2 = y[i] > 0.5 ? -2.0 * std::log(p) : -2.0 * std::log(1.0 - p);
                break;
            }
        }
        fit.deviance_residuals[i] = (y[i] >= mu ? 1.0 : -1.0) * std::sqrt(std::max(0.0, d2));
    }
}

constexpr int kMaxIterations = 100;
constexpr int kMaxHalvings = 20;
constexpr double kRelTolerance = 1e-10;

} // namespace

GlmFit poisson_fit(const DesignMatrix& design, std::span<const double> y) {
    const std::size_t n = design.n();
    const std::size_t k = design.k();
    if (y.size() != n) throw ValidationError("response length does not match design matrix");
    for (double v : y)
        if (v < 0.0 || v != std::floor(v))
            throw ValidationError("poisson response must be non-negative integers");

    GlmFit fit;
    fit.family = GlmFamily::Poisson;
    fit.names = design.names;
    fit.coefficients.assign(k, 0.0);

    linalg::Vector mu(n), eta(n);
    for (std::size_t i = 0; i < n; ++i) {
        mu[i] = y[i] + 0.5;
        eta[i] = std::log(mu[i]);
    }
    double dev = poisson_deviance(y, mu);

    bool converged = false;
    int iter = 0;
    linalg::Vector beta = fit.coefficients;
    while (iter < kMaxIterations) {
        ++iter;
        linalg::Vector w(n), z(n);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = std::max(mu[i], 1e-12);
            z[i] = eta[i] + (y[i] - mu[i]) / w[i];
        }
        linalg::Vector candidate = weighted_solve(design.x, w, z, 0.0);

        // step-halving toward the previous coefficients if deviance rises
        double new_dev = 0.0;
        linalg::Vector new_eta, new_mu;
        for (int half = 0;; ++half) {
            new_eta = linear_predictor(design.x, candidate);
            new_mu.resize(n);
            for (std::size_t i = 0; i < n; ++i) new_mu[i] = std::exp(new_eta[i]);
            new_dev = poisson_deviance(y, new_mu);
            if (iter == 1 || new_dev <= dev + 1e-12 || half >= kMaxHalvings) break;
            for (std::size_t j = 0; j < k; ++j) candidate[j] = 0.5 * (candidate[j] + beta[j]);
        }

        const double rel = std::abs(new_dev - dev) / (std::abs(dev) + 1e-10);
        beta = std::move(candidate);
        eta = std::move(new_eta);
        mu = std::move(new_mu);
        dev = new_dev;
        if (rel < kRelTolerance) {
            converged = true;
            break;
        }
    }

    fit.coefficients = beta;
    fit.fitted = mu;
    fit.deviance = dev;
    fit.log_likelihood = poisson_loglik(y, mu);
    fit.converged = converged;
    fit.iterations = iter;
    fill_residuals(fit, y);
    return fit;
}

GlmFit ridge_logistic_fit(const DesignMatrix& design, std::span<const double> y, double lambda) {
    const std::size_t n = design.n();
    const std::size_t k = design.k();
    if (y.size() != n) throw ValidationError("response length does not match design matrix");
    if (lambda < 0.0) throw ValidationError("ridge penalty must be >= 0");
    for (double v : y)
        if (v != 0.0 && v != 1.0) throw ValidationError("logistic response must be 0/1");

    GlmFit fit;
    fit.family = GlmFamily::Logistic;
    fit.lambda = lambda;
    fit.names = design.names;

    linalg::Vector beta(k, 0.0);
    linalg::Vector eta(n, 0.0), p(n, 0.5);

    auto penalty = [&](const linalg::Vector& b) {
        double s = 0.0;
        for (std::size_t j = 1; j < k; ++j) s += b[j] * b[j];
        return 2.0 * lambda * s;
    };
    double objective = -2.0 * logistic_loglik(y, eta) + penalty(beta);

    bool converged = false;
    int iter = 0;
    while (iter < kMaxIterations) {
        ++iter;
        linalg::Vector w(n), z(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double pi = std::clamp(p[i], 1e-12, 1.0 - 1e-12);
            w[i] = pi * (1.0 - pi);
            z[i] = eta[i] + (y[i] - pi) / w[i];
        }
        linalg::Vector candidate = weighted_solve(design.x, w, z, lambda);

        double new_obj = 0.0;
        linalg::Vector new_eta, new_p;
        for (int half = 0;; ++half) {
            new_eta = linear_predictor(design.x, candidate);
            new_p.resize(n);
            for (std::size_t i = 0; i < n; ++i) new_p[i] = logistic(new_eta[i]);
            new_obj = -2.0 * logistic_loglik(y, new_eta) + penalty(candidate);
            if (iter == 1 || new_obj <= objective + 1e-12 || half >= kMaxHalvings) break;
            for (std::size_t j = 0; j < k; ++j) candidate[j] = 0.5 * (candidate[j] + beta[j]);
        }

        const double rel = std::abs(new_obj - objective) / (std::abs(objective) + 1e-10);
        beta = std::move(candidate);
        eta = std::move(new_eta);
        p = std::move(new_p);
        objective = new_obj;
        if (rel < kRelTolerance) {
            converged = true;
            break;
        }
    }

    // Unpenalized fits with probabilities pinned at 0/1 have diverging
    // coefficients (separation); the optimum does not exist.
    if (lambda == 0.0) {
        for (double e : eta) {
            if (std::abs(e) > 30.0) {
                converged = false;
                break;
            }
        }
    }

    fit.coefficients = beta;
    fit.fitted = p;
    fit.log_likelihood = logistic_loglik(y, eta);
    fit.deviance = -2.0 * fit.log_likelihood;
    fit.converged = converged;
    fit.iterations = iter;
    fill_residuals(fit, y);
    return fit;
}

GlmFit linear_fit(const DesignMatrix& design, std::span<const double> y) {
    const std::size_t n = design.n();
    if (y.size() != n) throw ValidationError("response length does not match design matrix");

    GlmFit fit;
    fit.family = GlmFamily::Linear;
    fit.names = design.names;
    linalg::Vector ones(n, 1.0);
    linalg::Vector yy(y.begin(), y.end());
    fit.coefficients = weighted_solve(design.x, ones, yy, 0.0);
    fit.fitted = linear_predictor(design.x, fit.coefficients);
    fill_residuals(fit, y);
    double sse = 0.0;
    for (double r : fit.response_residuals) sse += r * r;
    fit.deviance = sse;
    const double sigma2 = std::max(sse / static_cast<double>(n), 1e-300);
    fit.log_likelihood = -0.5 * static_cast<double>(n) *
                         (std::log(2.0 * 3.14159265358979323846 * sigma2) + 1.0);
    fit.converged = true;
    fit.iterations = 1;
    return fit;
}

GlmFit refit_like(const GlmFit& like, const DesignMatrix& x, std::span<const double> y) {
    switch (like.family) {
        case GlmFamily::Linear: return linear_fit(x, y);
        case GlmFamily::Poisson: return poisson_fit(x, y);
        case GlmFamily::Logistic: return ridge_logistic_fit(x, y, like.lambda);
    }
    throw ValidationError("unknown family");
}

linalg::Vector deviance_residuals(const GlmFit& fit) { return fit.deviance_residuals; }

linalg::Vector white_robust_se(const GlmFit& fit, const DesignMatrix& design) {
    const std::size_t n = design.n();
    const std::size_t k = design.k();
    if (fit.response_residuals.size() != n)
        throw ValidationError("fit residuals do not match the design matrix");

    linalg::Matrix xtx(k, k);
    linalg::Matrix meat(k, k);
    for (std::size_t r = 0; r < n; ++r) {
        const double e2 = fit.response_residuals[r] * fit.response_residuals[r];
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i; j < k; ++j) {
                xtx(i, j) += design.x(r, i) * design.x(r, j);
                meat(i, j) += e2 * design.x(r, i) * design.x(r, j);
            }
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            xtx(j, i) = xtx(i, j);
            meat(j, i) = meat(i, j);
        }
    }

    linalg::Matrix bread(k, k);
    try {
        linalg::SymmetricSolver solver(xtx);
        for (std::size_t j = 0; j < k; ++j) {
            linalg::Vector e(k, 0.0);
            e[j] = 1.0;
            const linalg::Vector col = solver.solve(e);
            for (std::size_t i = 0; i < k; ++i) bread(i, j) = col[i];
        }
    } catch (const SingularSystemError& e) {
        throw RankDeficientError(std::string("white robust se: ") + e.what());
    }

    const linalg::Matrix sandwich = bread * meat * bread;
    linalg::Vector se(k);
    for (std::size_t i = 0; i < k; ++i) se[i] = std::sqrt(std::max(0.0, sandwich(i, i)));
    return se;
}

linalg::Vector cooks_distance(const GlmFit& fit, const DesignMatrix& design,
                              std::span<const double> y, unsigned jobs) {
    const std::size_t n = design.n();
    const std::size_t k = design.k();
    if (n <= k) throw ValidationError("cooks distance requires n > k");
    if (y.size() != n || fit.fitted.size() != n)
        throw ValidationError("fit/response do not match the design matrix");

    double sse = 0.0;
    for (double r : fit.response_residuals) sse += r * r;
    linalg::Vector d(n, 0.0);
    if (sse == 0.0) return d; // perfect fit: no observation can move it
    const double mse = sse / static_cast<double>(n - k);

    parallel_for(n, jobs, [&](std::size_t i) {
        DesignMatrix loo;
        loo.names = design.names;
        loo.x = linalg::Matrix(n - 1, k);
        linalg::Vector loo_y(n - 1);
        std::size_t rr = 0;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            for (std::size_t c = 0; c < k; ++c) loo.x(rr, c) = design.x(r, c);
            loo_y[rr] = y[r];
            ++rr;
        }
        GlmFit refit;
        try {
            refit = refit_like(fit, loo, loo_y);
        } catch (const Error&) {
            throw RefitFailureError(i);
        }
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double eta = 0.0;
            for (std::size_t c = 0; c < k; ++c) eta += design.x(j, c) * refit.coefficients[c];
            double pred = eta;
            if (fit.family == GlmFamily::Poisson) pred = std::exp(eta);
            else if (fit.family == GlmFamily::Logistic) pred = logistic(eta);
            const double diff = fit.fitted[j] - pred;
            sum += diff * diff;
        }
        d[i] = sum / (static_cast<double>(k) * mse);
    });
    return d;
}

LrTestResult lr_test(const GlmFit& full, const GlmFit& reduced) {
    if (full.family != reduced.family)
        throw NotNestedError("models use different families");
    if (full.fitted.size() != reduced.fitted.size())
        throw NotNestedError("models were fitted on different sample sizes");
    const std::set<std::string> full_names(full.names.begin(), full.names.end());
    for (const auto& name : reduced.names)
        if (!full_names.count(name))
            throw NotNestedError("reduced model column '" + name + "' missing from full model");
    if (reduced.names.size() > full.names.size())
        throw NotNestedError("reduced model has more columns than the full model");

    LrTestResult out;
    out.df = static_cast<int>(full.names.size() - reduced.names.size());
    out.chi2 = std::max(0.0, 2.0 * (full.log_likelihood - reduced.log_likelihood));
    out.p = out.df == 0 ? 1.0 : chi_square_sf(out.chi2, out.df);
    return out;
}

} // namespace pitchguard
