#include "pitchguard/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "pitchguard/error.hpp"
#include "pitchguard/special_functions.hpp"

namespace pitchguard {

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || a.size() != b.size()) throw LengthMismatchError(a.size(), b.size());
}

struct Moments {
    double mean_x, mean_y, var_x, var_y, cov; // population (divide by n)
};

Moments population_moments(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    Moments m{0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        m.mean_x += x[i];
        m.mean_y += y[i];
    }
    m.mean_x /= n;
    m.mean_y /= n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - m.mean_x;
        const double dy = y[i] - m.mean_y;
        m.var_x += dx * dx;
        m.var_y += dy * dy;
        m.cov += dx * dy;
    }
    m.var_x /= n;
    m.var_y /= n;
    m.cov /= n;
    return m;
}

} // namespace

double rmse(std::span<const double> pred, std::span<const double> truth) {
    check_lengths(pred, truth);
    double s = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - truth[i];
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(pred.size()));
}

double mae(std::span<const double> pred, std::span<const double> truth) {
    check_lengths(pred, truth);
    double s = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) s += std::abs(pred[i] - truth[i]);
    return s / static_cast<double>(pred.size());
}

double pearson(std::span<const double> pred, std::span<const double> truth) {
    check_lengths(pred, truth);
    const Moments m = population_moments(pred, truth);
    if (m.var_x == 0.0 || m.var_y == 0.0) throw ConstantVectorError();
    return m.cov / std::sqrt(m.var_x * m.var_y);
}

double ccc(std::span<const double> pred, std::span<const double> truth) {
    check_lengths(pred, truth);
    const Moments m = population_moments(pred, truth);
    if (m.var_x == 0.0 || m.var_y == 0.0) throw ConstantVectorError();
    const double shift = m.mean_x - m.mean_y;
    return 2.0 * m.cov / (m.var_x + m.var_y + shift * shift);
}

// --- confusion matrix ---

ConfusionMatrix ConfusionMatrix::from_labels(std::span<const std::string> pred,
                                             std::span<const std::string> truth) {
    if (pred.empty() || pred.size() != truth.size())
        throw LengthMismatchError(pred.size(), truth.size());
    std::map<std::string, std::size_t> index;
    for (const auto& l : pred) index.emplace(l, 0);
    for (const auto& l : truth) index.emplace(l, 0);
    ConfusionMatrix cm;
    for (auto& [label, idx] : index) {
        idx = cm.labels_.size();
        cm.labels_.push_back(label);
    }
    cm.counts_.assign(cm.labels_.size() * cm.labels_.size(), 0);
    for (std::size_t i = 0; i < pred.size(); ++i)
        ++cm.counts_[index[pred[i]] * cm.labels_.size() + index[truth[i]]];
    return cm;
}

ConfusionMatrix ConfusionMatrix::from_counts(std::vector<std::string> labels,
                                             std::vector<long> row_major_counts) {
    if (labels.empty() || row_major_counts.size() != labels.size() * labels.size())
        throw ValidationError("confusion matrix requires c x c counts");
    for (long c : row_major_counts)
        if (c < 0) throw ValidationError("confusion matrix counts must be non-negative");
    ConfusionMatrix cm;
    cm.labels_ = std::move(labels);
    cm.counts_ = std::move(row_major_counts);
    return cm;
}

long ConfusionMatrix::at(std::size_t predicted, std::size_t truth) const {
    return counts_[predicted * labels_.size() + truth];
}

long ConfusionMatrix::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), 0L);
}

long ConfusionMatrix::trace() const {
    long t = 0;
    for (std::size_t i = 0; i < labels_.size(); ++i) t += at(i, i);
    return t;
}

long ConfusionMatrix::row_sum(std::size_t i) const {
    long s = 0;
    for (std::size_t j = 0; j < labels_.size(); ++j) s += at(i, j);
    return s;
}

long ConfusionMatrix::col_sum(std::size_t j) const {
    long s = 0;
    for (std::size_t i = 0; i < labels_.size(); ++i) s += at(i, j);
    return s;
}

std::size_t ConfusionMatrix::label_index(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    throw UnknownLabelError(label);
}

double kappa(const ConfusionMatrix& cm) {
    const double total = static_cast<double>(cm.total());
    if (total <= 0.0) throw ValidationError("kappa requires a non-empty confusion matrix");
    const double pr_a = static_cast<double>(cm.trace()) / total;
    double pr_e = 0.0;
    for (std::size_t i = 0; i < cm.classes(); ++i)
        pr_e += static_cast<double>(cm.row_sum(i)) * static_cast<double>(cm.col_sum(i));
    pr_e /= total * total;
    if (pr_e == 1.0) throw DegenerateAgreementError();
    return (pr_a - pr_e) / (1.0 - pr_e);
}

double accuracy(const ConfusionMatrix& cm) {
    const double total = static_cast<double>(cm.total());
    if (total <= 0.0) throw ValidationError("accuracy requires a non-empty confusion matrix");
    return static_cast<double>(cm.trace()) / total;
}

std::optional<double> precision(const ConfusionMatrix& cm, const std::string& positive_label) {
    const std::size_t p = cm.label_index(positive_label);
    const long predicted_pos = cm.row_sum(p);
    if (predicted_pos == 0) return std::nullopt;
    return static_cast<double>(cm.at(p, p)) / static_cast<double>(predicted_pos);
}

std::optional<double> recall(const ConfusionMatrix& cm, const std::string& positive_label) {
    const std::size_t p = cm.label_index(positive_label);
    const long actual_pos = cm.col_sum(p);
    if (actual_pos == 0) return std::nullopt;
    return static_cast<double>(cm.at(p, p)) / static_cast<double>(actual_pos);
}

// --- rank-sum test ---

namespace {

std::vector<double> midranks(std::vector<double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

// counts subsets of size n1 with rank-sum <= / >= the observed one
void enumerate_subsets(const std::vector<double>& ranks, std::size_t start, std::size_t left,
                       double sum, double target, long& count_le, long& count_ge, long& total) {
    if (left == 0) {
        ++total;
        if (sum <= target + 1e-12) ++count_le;
        if (sum >= target - 1e-12) ++count_ge;
        return;
    }
    if (start + left > ranks.size()) return;
    enumerate_subsets(ranks, start + 1, left - 1, sum + ranks[start], target, count_le, count_ge,
                      total);
    enumerate_subsets(ranks, start + 1, left, sum, target, count_le, count_ge, total);
}

} // namespace

RankSumResult rank_sum_test(std::span<const double> group_a, std::span<const double> group_b) {
    const std::size_t n1 = group_a.size();
    const std::size_t n2 = group_b.size();
    if (n1 == 0 || n2 == 0) throw ValidationError("rank-sum test requires non-empty groups");
    const std::size_t n = n1 + n2;

    std::vector<double> combined(group_a.begin(), group_a.end());
    combined.insert(combined.end(), group_b.begin(), group_b.end());
    const std::vector<double> ranks = midranks(combined);

    double rank_sum_a = 0.0;
    for (std::size_t i = 0; i < n1; ++i) rank_sum_a += ranks[i];
    const double u = rank_sum_a - 0.5 * static_cast<double>(n1) * static_cast<double>(n1 + 1);
    const double mean = 0.5 * static_cast<double>(n1) * static_cast<double>(n2);

    // tie-corrected variance
    std::map<double, long> tie_groups;
    for (double v : combined) ++tie_groups[v];
    double tie_term = 0.0;
    for (const auto& [value, t] : tie_groups) {
        const double td = static_cast<double>(t);
        tie_term += td * td * td - td;
    }
    const double nn = static_cast<double>(n);
    const double var = (static_cast<double>(n1) * static_cast<double>(n2) / 12.0) *
                       ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));

    RankSumResult out;
    out.u = u;
    const double sd = var > 0.0 ? std::sqrt(var) : 0.0;
    if (sd > 0.0) {
        const double shift = std::max(0.0, std::abs(u - mean) - 0.5);
        out.z = (u >= mean ? 1.0 : -1.0) * shift / sd;
    }

    if (n <= 8) {
        out.exact = true;
        long count_le = 0, count_ge = 0, total = 0;
        enumerate_subsets(ranks, 0, n1, 0.0, rank_sum_a, count_le, count_ge, total);
        const double p_le = static_cast<double>(count_le) / static_cast<double>(total);
        const double p_ge = static_cast<double>(count_ge) / static_cast<double>(total);
        out.p = std::min(1.0, 2.0 * std::min(p_le, p_ge));
    } else {
        out.p = sd > 0.0 ? std::min(1.0, 2.0 * normal_sf(std::abs(out.z))) : 1.0;
    }
    return out;
}

void MetricRow::set(const std::string& name, std::optional<double> value) {
    for (auto& [k, v] : values) {
        if (k == name) {
            v = value;
            return;
        }
    }
    values.emplace_back(name, value);
}

std::optional<double> MetricRow::get(const std::string& name) const {
    for (const auto& [k, v] : values)
        if (k == name) return v;
    return std::nullopt;
}

} // namespace pitchguard
