#include "pitchguard/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pitchguard/error.hpp"

namespace pitchguard::linalg {

Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

Vector operator*(const Matrix& a, const Vector& v) {
    Vector out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

Matrix transpose(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

// --- SymmetricSolver ---

SymmetricSolver::SymmetricSolver(const Matrix& a) : n_(a.rows()) {
    if (a.rows() != a.cols()) throw SingularSystemError("solver requires a square matrix");
    if (n_ == 0) throw SingularSystemError("solver requires a non-empty matrix");
    if (try_cholesky(a)) {
        cholesky_ = true;
        return;
    }
    factor_bunch_kaufman(a);
}

bool SymmetricSolver::try_cholesky(const Matrix& a) {
    Matrix l(n_, n_);
    for (std::size_t j = 0; j < n_; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n_; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / ljj;
        }
    }
    factor_ = std::move(l);
    return true;
}

Vector SymmetricSolver::solve_cholesky(const Vector& b) const {
    Vector y(b);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = y[i];
        for (std::size_t k = 0; k < i; ++k) s -= factor_(i, k) * y[k];
        y[i] = s / factor_(i, i);
    }
    for (std::size_t ii = n_; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n_; ++k) s -= factor_(k, ii) * y[k];
        y[ii] = s / factor_(ii, ii);
    }
    return y;
}

// Bunch-Kaufman LDL^T with partial (rook-free) pivoting, lower storage.
// Full-row symmetric interchanges keep the factorization in the clean form
// P A P^T = L D L^T, so the solve applies the permutation once up front.
void SymmetricSolver::factor_bunch_kaufman(const Matrix& a) {
    const double alpha = (1.0 + std::sqrt(17.0)) / 8.0;
    Matrix m(a);
    // mirror so lookups below the diagonal are valid regardless of input
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) m(j, i) = m(i, j);

    block_.assign(n_, 1);
    perm_.resize(n_);
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});

    auto full_swap = [&](std::size_t r, std::size_t s) {
        if (r == s) return;
        for (std::size_t j = 0; j < n_; ++j) std::swap(m(r, j), m(s, j));
        for (std::size_t i = 0; i < n_; ++i) std::swap(m(i, r), m(i, s));
        std::swap(perm_[r], perm_[s]);
    };

    std::size_t k = 0;
    while (k < n_) {
        std::size_t kstep = 1;
        std::size_t kp = k;
        const double absakk = std::abs(m(k, k));

        if (k + 1 < n_) {
            std::size_t imax = k + 1;
            double colmax = std::abs(m(k + 1, k));
            for (std::size_t i = k + 2; i < n_; ++i) {
                const double v = std::abs(m(i, k));
                if (v > colmax) {
                    colmax = v;
                    imax = i;
                }
            }
            if (std::max(absakk, colmax) == 0.0)
                throw SingularSystemError("matrix is singular (zero pivot column)");
            if (absakk < alpha * colmax) {
                double rowmax = 0.0;
                for (std::size_t j = k; j < n_; ++j) {
                    if (j == imax) continue;
                    rowmax = std::max(rowmax, std::abs(m(imax, j)));
                }
                if (absakk * rowmax >= alpha * colmax * colmax) {
                    kp = k;
                } else if (std::abs(m(imax, imax)) >= alpha * rowmax) {
                    kp = imax;
                } else {
                    kp = imax;
                    kstep = 2;
                }
            }
        } else if (absakk == 0.0) {
            throw SingularSystemError("matrix is singular (zero pivot column)");
        }

        full_swap(k + kstep - 1, kp);

        // The trailing submatrix is kept fully mirrored: the rowmax search
        // above reads both triangles of row imax.
        if (kstep == 1) {
            const double d = m(k, k);
            if (d == 0.0) throw SingularSystemError("matrix is singular (zero 1x1 pivot)");
            for (std::size_t i = k + 1; i < n_; ++i) {
                const double mik = m(i, k);
                if (mik == 0.0) continue;
                for (std::size_t j = k + 1; j <= i; ++j) {
                    m(i, j) -= mik * m(j, k) / d;
                    m(j, i) = m(i, j);
                }
            }
            for (std::size_t i = k + 1; i < n_; ++i) m(i, k) /= d;
            block_[k] = 1;
            k += 1;
        } else {
            const double d11 = m(k, k);
            const double d21 = m(k + 1, k);
            const double d22 = m(k + 1, k + 1);
            const double det = d11 * d22 - d21 * d21;
            if (det == 0.0) throw SingularSystemError("matrix is singular (zero 2x2 pivot)");
            std::vector<double> w1(n_, 0.0), w2(n_, 0.0);
            for (std::size_t i = k + 2; i < n_; ++i) {
                w1[i] = (d22 * m(i, k) - d21 * m(i, k + 1)) / det;
                w2[i] = (d11 * m(i, k + 1) - d21 * m(i, k)) / det;
            }
            for (std::size_t i = k + 2; i < n_; ++i) {
                for (std::size_t j = k + 2; j <= i; ++j) {
                    m(i, j) -= w1[i] * m(j, k) + w2[i] * m(j, k + 1);
                    m(j, i) = m(i, j);
                }
            }
            for (std::size_t i = k + 2; i < n_; ++i) {
                m(i, k) = w1[i];
                m(i, k + 1) = w2[i];
            }
            block_[k] = 2;
            block_[k + 1] = 0;
            k += 2;
        }
    }
    factor_ = std::move(m);
}

Vector SymmetricSolver::solve_bunch_kaufman(const Vector& b) const {
    Vector y(n_);
    for (std::size_t i = 0; i < n_; ++i) y[i] = b[perm_[i]];

    // L z = y (unit lower; D off-diagonals at (k+1,k) are skipped via block_)
    std::size_t k = 0;
    while (k < n_) {
        if (block_[k] == 1) {
            for (std::size_t i = k + 1; i < n_; ++i) y[i] -= factor_(i, k) * y[k];
            k += 1;
        } else {
            for (std::size_t i = k + 2; i < n_; ++i)
                y[i] -= factor_(i, k) * y[k] + factor_(i, k + 1) * y[k + 1];
            k += 2;
        }
    }

    // D w = z
    k = 0;
    while (k < n_) {
        if (block_[k] == 1) {
            y[k] /= factor_(k, k);
            k += 1;
        } else {
            const double d11 = factor_(k, k);
            const double d21 = factor_(k + 1, k);
            const double d22 = factor_(k + 1, k + 1);
            const double det = d11 * d22 - d21 * d21;
            const double bk = y[k];
            const double bk1 = y[k + 1];
            y[k] = (d22 * bk - d21 * bk1) / det;
            y[k + 1] = (d11 * bk1 - d21 * bk) / det;
            k += 2;
        }
    }

    // L^T x = w, blocks in reverse order
    std::size_t kk = n_;
    while (kk > 0) {
        const std::size_t start = (block_[kk - 1] == 0) ? kk - 2 : kk - 1;
        if (block_[start] == 1) {
            for (std::size_t i = start + 1; i < n_; ++i) y[start] -= factor_(i, start) * y[i];
        } else {
            for (std::size_t i = start + 2; i < n_; ++i) {
                y[start] -= factor_(i, start) * y[i];
                y[start + 1] -= factor_(i, start + 1) * y[i];
            }
        }
        kk = start;
    }

    Vector x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[perm_[i]] = y[i];
    return x;
}

Vector SymmetricSolver::solve(const Vector& b) const {
    if (b.size() != n_) throw SingularSystemError("right-hand side size mismatch");
    return cholesky_ ? solve_cholesky(b) : solve_bunch_kaufman(b);
}

// --- Jacobi eigendecomposition ---

EigenDecomposition jacobi_eigen(const Matrix& a, double tol, int max_sweeps) {
    const std::size_t n = a.rows();
    if (a.rows() != a.cols()) throw NumericalFailureError("eigen requires a square matrix");
    Matrix m(a);
    Matrix v = Matrix::identity(n);
    const double norm = frobenius_norm(m);

    auto off_mass = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * m(i, j) * m(i, j);
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < max_sweeps && n > 1; ++sweep) {
        if (off_mass() <= tol * norm) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (apq == 0.0) continue;
                const double tau = (m(q, q) - m(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = m(k, p);
                    const double akq = m(k, q);
                    m(k, p) = m(p, k) = c * akp - s * akq;
                    m(k, q) = m(q, k) = s * akp + c * akq;
                }
                m(p, p) -= t * apq;
                m(q, q) += t * apq;
                m(p, q) = m(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    EigenDecomposition out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = m(i, i);
    out.vectors = std::move(v);
    return out;
}

EigenDecomposition jacobi_eigen_sorted(const Matrix& a, double tol) {
    EigenDecomposition e = jacobi_eigen(a, tol);
    const std::size_t n = e.values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return e.values[i] > e.values[j]; });
    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = e.values[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = e.vectors(i, order[j]);
    }
    return out;
}

double min_eigenvalue(const Matrix& a) {
    const EigenDecomposition e = jacobi_eigen(a);
    return *std::min_element(e.values.begin(), e.values.end());
}

} // namespace pitchguard::linalg
