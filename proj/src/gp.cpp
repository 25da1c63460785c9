#include "pitchguard/gp.hpp"

#include <cmath>

#include "pitchguard/parallel.hpp"

namespace pitchguard {

GpDual::GpDual(const linalg::Matrix& gram, const linalg::Vector& targets, double epsilon,
               bool log_scale)
    : targets_(targets), epsilon_(epsilon), log_scale_(log_scale) {
    if (gram.rows() != gram.cols() || gram.rows() != targets.size())
        throw ValidationError("gp fit requires a square Gram matching the targets");
    if (!(epsilon > 0.0)) throw ValidationError("gp noise epsilon must be > 0");
    linalg::Matrix k(gram);
    for (std::size_t i = 0; i < k.rows(); ++i) k(i, i) += epsilon;
    solver_ = std::make_shared<linalg::SymmetricSolver>(k);
    dual_ = solver_->solve(targets_);
}

PredictiveDistribution GpDual::predict(const linalg::Vector& cross_cov, double self_cov) const {
    if (cross_cov.size() != targets_.size())
        throw ValidationError("cross-covariance size mismatch");
    PredictiveDistribution out;
    out.mean = linalg::dot(cross_cov, dual_);
    out.variance = self_cov - linalg::dot(cross_cov, solver_->solve(cross_cov));
    if (log_scale_) out.day_scale_mean = std::exp(out.mean);
    return out;
}

GridSearchResult grid_search(std::span<const double> gamma_grid,
                             std::span<const double> epsilon_grid,
                             const SettingProtocol& protocol, unsigned jobs) {
    if (gamma_grid.empty() || epsilon_grid.empty())
        throw ValidationError("grid search requires non-empty grids");

    GridSearchResult result;
    result.rows.resize(gamma_grid.size() * epsilon_grid.size());
    parallel_for(result.rows.size(), jobs, [&](std::size_t idx) {
        GridRow& row = result.rows[idx];
        row.gamma = gamma_grid[idx / epsilon_grid.size()];
        row.epsilon = epsilon_grid[idx % epsilon_grid.size()];
        try {
            const ProtocolScore score = protocol(row.gamma, row.epsilon);
            row.ccc = score.ccc;
            row.mae = score.mae;
            row.min_variance = score.min_variance;
            if (score.min_variance < kNegativeVarianceTolerance) {
                row.rejection = "negative variance";
            } else if (!score.ccc.has_value() || !score.mae.has_value()) {
                row.rejection = "undefined metric";
            } else {
                row.accepted = true;
            }
        } catch (const Error& e) {
            row.rejection = std::string("numeric failure: ") + e.what();
        }
    });

    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const GridRow& row = result.rows[i];
        if (!row.accepted) continue;
        if (!result.best) {
            result.best = i;
            continue;
        }
        const GridRow& cur = result.rows[*result.best];
        if (*row.ccc > *cur.ccc || (*row.ccc == *cur.ccc && *row.mae < *cur.mae)) result.best = i;
    }
    if (!result.best)
        throw NoAcceptedSettingError("grid search: every (gamma, epsilon) setting was rejected");
    return result;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi > lo) || count == 0)
        throw ValidationError("log_spaced requires 0 < lo < hi and count >= 1");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (std::log(hi) - std::log(lo)) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = std::exp(std::log(lo) + step * static_cast<double>(i));
    out.back() = hi;
    return out;
}

std::vector<double> default_gamma_grid() { return log_spaced(2e-5, 0.2, 1000); }

std::vector<double> default_epsilon_grid() { return log_spaced(1e-4, 1e-2, 10); }

} // namespace pitchguard
