#ifndef PITCHGUARD_GP_HPP
#define PITCHGUARD_GP_HPP

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pitchguard/error.hpp"
#include "pitchguard/kernels.hpp"
#include "pitchguard/linalg.hpp"

namespace pitchguard {

struct PredictiveDistribution {
    double mean = 0.0;
    double variance = 0.0;
    // exp(mean), exposed when the fit's targets are log-days.
    std::optional<double> day_scale_mean;
};

// Zero-mean GP dual solution on a precomputed Gram: holds the factorization
// of K + eps*I and the dual weights (K + eps*I)^{-1} f. Immutable after
// construction and safe to share across threads.
class GpDual {
public:
    GpDual(const linalg::Matrix& gram, const linalg::Vector& targets, double epsilon,
           bool log_scale = false);

    // mean = k*.dual; variance = self_cov - k*.(K+eps I)^{-1} k*
    PredictiveDistribution predict(const linalg::Vector& cross_cov, double self_cov) const;

    const linalg::Vector& dual() const { return dual_; }
    const linalg::Vector& targets() const { return targets_; }
    double epsilon() const { return epsilon_; }
    bool log_scale() const { return log_scale_; }
    std::size_t size() const { return targets_.size(); }

private:
    std::shared_ptr<const linalg::SymmetricSolver> solver_;
    linalg::Vector targets_;
    linalg::Vector dual_;
    double epsilon_ = 0.0;
    bool log_scale_ = false;
};

// GP regression over arbitrary input types via a kernel callable.
template <class Input>
class GpFit {
public:
    using KernelFn = std::function<double(const Input&, const Input&)>;

    GpFit(KernelFn kernel, std::vector<Input> inputs, const linalg::Vector& targets,
          double epsilon, bool log_scale = false)
        : kernel_(std::move(kernel)),
          inputs_(std::move(inputs)),
          dual_(build_dual(kernel_, inputs_, targets, epsilon, log_scale)) {}

    PredictiveDistribution predict(const Input& query) const {
        linalg::Vector cross(inputs_.size());
        for (std::size_t i = 0; i < inputs_.size(); ++i) cross[i] = kernel_(query, inputs_[i]);
        return dual_.predict(cross, kernel_(query, query));
    }

    const GpDual& dual() const { return dual_; }
    const std::vector<Input>& inputs() const { return inputs_; }
    double epsilon() const { return dual_.epsilon(); }

private:
    static GpDual build_dual(const KernelFn& kernel, const std::vector<Input>& inputs,
                             const linalg::Vector& targets, double epsilon, bool log_scale) {
        if (inputs.empty() || inputs.size() != targets.size())
            throw ValidationError("gp fit requires |inputs| = |targets| >= 1");
        const std::size_t n = inputs.size();
        linalg::Matrix k(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) k(j, i) = k(i, j) = kernel(inputs[i], inputs[j]);
        return GpDual(k, targets, epsilon, log_scale);
    }

    KernelFn kernel_;
    std::vector<Input> inputs_;
    GpDual dual_;
};

template <class Input>
GpFit<Input> gp_fit(typename GpFit<Input>::KernelFn kernel, std::vector<Input> inputs,
                    const linalg::Vector& targets, double epsilon, bool log_scale = false) {
    return GpFit<Input>(std::move(kernel), std::move(inputs), targets, epsilon, log_scale);
}

// --- hyperparameter grid search ---

// Scores one (gamma, epsilon) setting; produced by an evaluation protocol
// such as the leave-one-out sweep in eval.
struct ProtocolScore {
    std::optional<double> ccc;
    std::optional<double> mae;
    double min_variance = 0.0; // most negative predictive variance seen
};

using SettingProtocol = std::function<ProtocolScore(double gamma, double epsilon)>;

struct GridRow {
    double gamma = 0.0;
    double epsilon = 0.0;
    std::optional<double> ccc;
    std::optional<double> mae;
    double min_variance = 0.0;
    bool accepted = false;
    std::string rejection; // empty when accepted
};

struct GridSearchResult {
    std::vector<GridRow> rows;          // canonical grid order (gamma-major)
    std::optional<std::size_t> best;    // max CCC among accepted, ties by lower MAE
};

// Evaluates every (gamma, epsilon) pair; a pair is rejected iff the protocol
// observed a predictive variance below -1e-8 or failed numerically. Throws
// NoAcceptedSettingError when nothing survives.
GridSearchResult grid_search(std::span<const double> gamma_grid,
                             std::span<const double> epsilon_grid,
                             const SettingProtocol& protocol, unsigned jobs = 1);

inline constexpr double kNegativeVarianceTolerance = -1e-8;

std::vector<double> log_spaced(double lo, double hi, std::size_t count);
std::vector<double> default_gamma_grid();   // 1000 values in [2e-5, 0.2]
std::vector<double> default_epsilon_grid(); // 10 values in [1e-4, 1e-2]

} // namespace pitchguard

#endif
