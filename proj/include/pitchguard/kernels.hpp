#ifndef PITCHGUARD_KERNELS_HPP
#define PITCHGUARD_KERNELS_HPP

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "pitchguard/linalg.hpp"
#include "pitchguard/types.hpp"

namespace pitchguard {

using NumericVector = std::vector<double>;

// The two exposure channels of one subject, as plain series.
struct ExposureSeries {
    std::vector<double> training;
    std::vector<double> match;
};

ExposureSeries make_series(const ExposureRecord& r);

// k(x, x') = C
struct ConstantKernel {
    double value = 1.0;
};

// k(x, x') = exp(-sigma * ||x - x'||^2)
struct RbfKernel {
    double sigma = 1.0;
};

// k(x, x') = (sigma * <x, x'>)^degree
struct PolynomialKernel {
    double sigma = 1.0;
    int degree = 1;
};

// k(x, y) = exp(-gamma * DTW(x, y)) on scalar sequences of any lengths.
struct DtwRbfKernel {
    double gamma = 1.0;
};

// Unweighted mean of the DTW-RBF kernels of the training and match channels.
struct ExposureAvgKernel {
    double gamma = 1.0;
};

using KernelSpec =
    std::variant<ConstantKernel, RbfKernel, PolynomialKernel, DtwRbfKernel, ExposureAvgKernel>;

using KernelInput = std::variant<NumericVector, ExposureSeries>;

// Throws InvalidSpecError on out-of-domain hyperparameters
// (gamma/sigma must be > 0, degree >= 1).
void validate(const KernelSpec& spec);

// Evaluates the kernel on inputs of the matching kind; vector kernels
// require NumericVector inputs, DtwRbf scalar sequences (also
// NumericVector), ExposureAvg paired series. Throws InputKindMismatchError
// otherwise.
double kernel_eval(const KernelSpec& spec, const KernelInput& a, const KernelInput& b);

double exposure_kernel(const ExposureAvgKernel& spec, const ExposureSeries& a,
                       const ExposureSeries& b);
double exposure_kernel(const ExposureAvgKernel& spec, const ExposureRecord& a,
                       const ExposureRecord& b);

// Symmetric matrix of pairwise kernel values; minimum eigenvalue is
// computed on first request and cached.
class GramMatrix {
public:
    GramMatrix() = default;
    explicit GramMatrix(linalg::Matrix entries) : entries_(std::move(entries)) {}

    const linalg::Matrix& entries() const { return entries_; }
    std::size_t size() const { return entries_.rows(); }
    double min_eigenvalue() const;

private:
    linalg::Matrix entries_;
    mutable std::optional<double> min_eig_;
};

GramMatrix gram(const KernelSpec& spec, std::span<const KernelInput> inputs, unsigned jobs = 1);
GramMatrix gram(const KernelSpec& spec, std::span<const NumericVector> inputs, unsigned jobs = 1);
GramMatrix gram(const ExposureAvgKernel& spec, std::span<const ExposureSeries> inputs,
                unsigned jobs = 1);

struct PsdProbe {
    bool psd = false;
    double min_eigenvalue = 0.0;
};

// PSD iff the minimum eigenvalue is >= -tol.
PsdProbe psd_probe(const GramMatrix& g, double tol = 1e-8);

} // namespace pitchguard

#endif
