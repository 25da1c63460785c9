#ifndef PITCHGUARD_METRICS_HPP
#define PITCHGUARD_METRICS_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pitchguard {

double rmse(std::span<const double> pred, std::span<const double> truth);
double mae(std::span<const double> pred, std::span<const double> truth);

// Sample Pearson correlation; throws ConstantVectorError when either input
// has zero variance.
double pearson(std::span<const double> pred, std::span<const double> truth);

// Lin's concordance correlation coefficient with population moments:
// 2*cov / (var_x + var_y + (mean_x - mean_y)^2).
double ccc(std::span<const double> pred, std::span<const double> truth);

// Square confusion table; rows are predicted labels, columns are truth.
class ConfusionMatrix {
public:
    static ConfusionMatrix from_labels(std::span<const std::string> pred,
                                       std::span<const std::string> truth);
    static ConfusionMatrix from_counts(std::vector<std::string> labels,
                                       std::vector<long> row_major_counts);

    std::size_t classes() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    long at(std::size_t predicted, std::size_t truth) const;
    long total() const;
    long trace() const;
    long row_sum(std::size_t i) const;
    long col_sum(std::size_t j) const;
    std::size_t label_index(const std::string& label) const; // throws UnknownLabelError

private:
    std::vector<std::string> labels_;
    std::vector<long> counts_;
};

// Cohen's kappa: (Pr(a) - Pr(e)) / (1 - Pr(e)); any class count.
double kappa(const ConfusionMatrix& cm);

double accuracy(const ConfusionMatrix& cm);

// One-vs-rest; 0/0 cases are reported as undefined, never as 0.
std::optional<double> precision(const ConfusionMatrix& cm, const std::string& positive_label);
std::optional<double> recall(const ConfusionMatrix& cm, const std::string& positive_label);

// Unpaired two-group rank test (Mann-Whitney U) with midrank ties.
// Combined sizes <= 8 use exact enumeration of rank assignments; larger
// inputs the normal approximation with tie-corrected variance and 0.5
// continuity correction.
struct RankSumResult {
    double u = 0.0; // U statistic of the first group
    double z = 0.0;
    double p = 1.0; // two-sided
    bool exact = false;
};

RankSumResult rank_sum_test(std::span<const double> group_a, std::span<const double> group_b);

// Named metric values for one evaluation unit (a fold, or a T-a
// coordinate); undefined metrics are explicit, never silently 0.
struct MetricRow {
    std::string unit;
    std::vector<std::pair<std::string, std::optional<double>>> values;

    void set(const std::string& name, std::optional<double> value);
    std::optional<double> get(const std::string& name) const;
};

} // namespace pitchguard

#endif
