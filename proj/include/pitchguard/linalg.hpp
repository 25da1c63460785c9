#ifndef PITCHGUARD_LINALG_HPP
#define PITCHGUARD_LINALG_HPP

#include <cstddef>
#include <vector>

namespace pitchguard::linalg {

using Vector = std::vector<double>;

// Dense row-major matrix. Small problems only (n up to a few hundred);
// no view/expression machinery.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const double& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& v);
Matrix transpose(const Matrix& a);

double dot(const Vector& a, const Vector& b);
double max_abs(const Matrix& a);
double frobenius_norm(const Matrix& a);

// Symmetric linear solver: factorizes once, solves many right-hand sides.
// Uses Cholesky when the matrix is positive definite; falls back to
// Bunch-Kaufman LDL^T with symmetric pivoting for indefinite matrices.
// Throws SingularSystemError when the matrix is singular.
class SymmetricSolver {
public:
    explicit SymmetricSolver(const Matrix& a);

    Vector solve(const Vector& b) const;
    bool used_cholesky() const { return cholesky_; }
    std::size_t size() const { return n_; }

private:
    bool try_cholesky(const Matrix& a);
    void factor_bunch_kaufman(const Matrix& a);
    Vector solve_cholesky(const Vector& b) const;
    Vector solve_bunch_kaufman(const Vector& b) const;

    std::size_t n_ = 0;
    bool cholesky_ = false;
    Matrix factor_;                    // L (Cholesky) or L+D (Bunch-Kaufman)
    std::vector<int> block_;           // 1 = 1x1 pivot, 2 = 2x2 start, 0 = 2x2 tail
    std::vector<std::size_t> perm_;    // perm_[i] = source row of permuted row i
};

// Eigendecomposition of a symmetric matrix: A = V diag(values) V^T,
// eigenvectors in the columns of `vectors`.
struct EigenDecomposition {
    Vector values;
    Matrix vectors;
};

// Cyclic Jacobi rotations; converges when the off-diagonal Frobenius mass
// drops below tol * ||A||_F. Unsorted output order.
EigenDecomposition jacobi_eigen(const Matrix& a, double tol = 1e-12, int max_sweeps = 100);

// Same, sorted by descending eigenvalue.
EigenDecomposition jacobi_eigen_sorted(const Matrix& a, double tol = 1e-12);

double min_eigenvalue(const Matrix& a);

} // namespace pitchguard::linalg

#endif
