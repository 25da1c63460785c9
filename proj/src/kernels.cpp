#include "pitchguard/kernels.hpp"

#include <cmath>

#include "pitchguard/dtw.hpp"
#include "pitchguard/error.hpp"
#include "pitchguard/parallel.hpp"

namespace pitchguard {

ExposureSeries make_series(const ExposureRecord& r) {
    return ExposureSeries{r.training_series(), r.match_series()};
}

void validate(const KernelSpec& spec) {
    std::visit(
        [](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, RbfKernel>) {
                if (!(k.sigma > 0.0)) throw InvalidSpecError("rbf kernel requires sigma > 0");
            } else if constexpr (std::is_same_v<T, PolynomialKernel>) {
                if (!(k.sigma > 0.0))
                    throw InvalidSpecError("polynomial kernel requires sigma > 0");
                if (k.degree < 1) throw InvalidSpecError("polynomial kernel requires degree >= 1");
            } else if constexpr (std::is_same_v<T, DtwRbfKernel>) {
                if (!(k.gamma > 0.0)) throw InvalidSpecError("dtw-rbf kernel requires gamma > 0");
            } else if constexpr (std::is_same_v<T, ExposureAvgKernel>) {
                if (!(k.gamma > 0.0))
                    throw InvalidSpecError("exposure kernel requires gamma > 0");
            }
        },
        spec);
}

namespace {

const NumericVector& as_vector(const KernelInput& in, const char* what) {
    const auto* v = std::get_if<NumericVector>(&in);
    if (!v) throw InputKindMismatchError(std::string(what) + " requires numeric-vector inputs");
    return *v;
}

const ExposureSeries& as_series(const KernelInput& in, const char* what) {
    const auto* s = std::get_if<ExposureSeries>(&in);
    if (!s) throw InputKindMismatchError(std::string(what) + " requires exposure-series inputs");
    return *s;
}

double squared_distance(const NumericVector& a, const NumericVector& b) {
    if (a.size() != b.size())
        throw InputKindMismatchError("vector kernel requires equal-length inputs");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double dot_product(const NumericVector& a, const NumericVector& b) {
    if (a.size() != b.size())
        throw InputKindMismatchError("vector kernel requires equal-length inputs");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double dtw_rbf(double gamma, const NumericVector& a, const NumericVector& b) {
    return std::exp(-gamma * dtw_distance(a, b).distance);
}

} // namespace

double exposure_kernel(const ExposureAvgKernel& spec, const ExposureSeries& a,
                       const ExposureSeries& b) {
    if (!(spec.gamma > 0.0)) throw InvalidSpecError("exposure kernel requires gamma > 0");
    const double kt = dtw_rbf(spec.gamma, a.training, b.training);
    const double km = dtw_rbf(spec.gamma, a.match, b.match);
    return 0.5 * (kt + km);
}

double exposure_kernel(const ExposureAvgKernel& spec, const ExposureRecord& a,
                       const ExposureRecord& b) {
    return exposure_kernel(spec, make_series(a), make_series(b));
}

double kernel_eval(const KernelSpec& spec, const KernelInput& a, const KernelInput& b) {
    validate(spec);
    return std::visit(
        [&](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ConstantKernel>) {
                as_vector(a, "constant kernel");
                as_vector(b, "constant kernel");
                return k.value;
            } else if constexpr (std::is_same_v<T, RbfKernel>) {
                return std::exp(-k.sigma *
                                squared_distance(as_vector(a, "rbf kernel"),
                                                 as_vector(b, "rbf kernel")));
            } else if constexpr (std::is_same_v<T, PolynomialKernel>) {
                return std::pow(k.sigma * dot_product(as_vector(a, "polynomial kernel"),
                                                      as_vector(b, "polynomial kernel")),
                                k.degree);
            } else if constexpr (std::is_same_v<T, DtwRbfKernel>) {
                return dtw_rbf(k.gamma, as_vector(a, "dtw-rbf kernel"),
                               as_vector(b, "dtw-rbf kernel"));
            } else {
                return exposure_kernel(k, as_series(a, "exposure kernel"),
                                       as_series(b, "exposure kernel"));
            }
        },
        spec);
}

namespace {

// Evaluates the upper triangle in parallel and mirrors it, so the result is
// exactly symmetric and independent of the job count.
template <class EvalFn>
GramMatrix build_gram(std::size_t n, unsigned jobs, EvalFn&& eval) {
    if (n == 0) throw ValidationError("gram requires at least one input");
    linalg::Matrix g(n, n);
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    cells.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) cells.emplace_back(i, j);
    parallel_for(cells.size(), jobs, [&](std::size_t c) {
        const auto [i, j] = cells[c];
        try {
            g(i, j) = eval(i, j);
        } catch (const Error& e) {
            throw ValidationError("gram entry (" + std::to_string(i) + "," + std::to_string(j) +
                                  "): " + e.what());
        }
    });
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g(j, i) = g(i, j);
    return GramMatrix(std::move(g));
}

} // namespace

GramMatrix gram(const KernelSpec& spec, std::span<const KernelInput> inputs, unsigned jobs) {
    validate(spec);
    return build_gram(inputs.size(), jobs,
                      [&](std::size_t i, std::size_t j) { return kernel_eval(spec, inputs[i], inputs[j]); });
}

GramMatrix gram(const KernelSpec& spec, std::span<const NumericVector> inputs, unsigned jobs) {
    std::vector<KernelInput> wrapped(inputs.begin(), inputs.end());
    return gram(spec, std::span<const KernelInput>(wrapped), jobs);
}

GramMatrix gram(const ExposureAvgKernel& spec, std::span<const ExposureSeries> inputs,
                unsigned jobs) {
    return build_gram(inputs.size(), jobs, [&](std::size_t i, std::size_t j) {
        return exposure_kernel(spec, inputs[i], inputs[j]);
    });
}

double GramMatrix::min_eigenvalue() const {
    if (!min_eig_) min_eig_ = linalg::min_eigenvalue(entries_);
    return *min_eig_;
}

PsdProbe psd_probe(const GramMatrix& g, double tol) {
    const double min_eig = g.min_eigenvalue();
    return PsdProbe{min_eig >= -tol, min_eig};
}

} // namespace pitchguard
