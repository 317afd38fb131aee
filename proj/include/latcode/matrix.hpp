#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "latcode/error.hpp"

namespace latcode {

// Dense real matrix, row-major. The single numeric container of the library;
// everything here runs at desk scale (dimensions <= ~10), so the kernels favor
// clarity over blocking or vectorization.
class Matrix {
  public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> entries)
        : rows_(rows), cols_(cols), data_(entries) {
        if (data_.size() != rows * cols)
            throw error(errc::bad_dims, "entry count does not match rows*cols");
        check_finite();
    }

    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows * cols)
            throw error(errc::bad_dims, "entry count does not match rows*cols");
        check_finite();
    }

    static Matrix identity(std::size_t k) {
        Matrix m(k, k);
        for (std::size_t i = 0; i < k; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& rhs) const {
        if (cols_ != rhs.rows_) throw error(errc::bad_dims, "matrix product shape mismatch");
        Matrix p(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t l = 0; l < cols_; ++l) {
                const double a = (*this)(i, l);
                if (a == 0.0) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j) p(i, j) += a * rhs(l, j);
            }
        return p;
    }

    Matrix operator*(double s) const {
        Matrix m = *this;
        for (double& v : m.data_) v *= s;
        return m;
    }

    Matrix operator-(const Matrix& rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw error(errc::bad_dims, "matrix difference shape mismatch");
        Matrix m = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] -= rhs.data_[i];
        return m;
    }

    Matrix operator+(const Matrix& rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw error(errc::bad_dims, "matrix sum shape mismatch");
        Matrix m = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] += rhs.data_[i];
        return m;
    }

    // A^t A
    Matrix gram() const {
        Matrix g(cols_, cols_);
        for (std::size_t i = 0; i < cols_; ++i)
            for (std::size_t j = i; j < cols_; ++j) {
                double s = 0.0;
                for (std::size_t l = 0; l < rows_; ++l) s += (*this)(l, i) * (*this)(l, j);
                g(i, j) = s;
                g(j, i) = s;
            }
        return g;
    }

    // Rows picked by 1-based, strictly increasing indices.
    Matrix select_rows(const std::vector<int>& subset) const {
        Matrix m(subset.size(), cols_);
        for (std::size_t r = 0; r < subset.size(); ++r) {
            const int idx = subset[r];
            if (idx < 1 || static_cast<std::size_t>(idx) > rows_)
                throw error(errc::bad_subset, "row index out of range");
            for (std::size_t j = 0; j < cols_; ++j)
                m(r, j) = (*this)(static_cast<std::size_t>(idx - 1), j);
        }
        return m;
    }

    std::vector<double> times(const std::vector<double>& v) const {
        if (v.size() != cols_) throw error(errc::bad_dims, "matvec shape mismatch");
        std::vector<double> out(rows_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
            out[i] = s;
        }
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::abs(v));
        return m;
    }

  private:
    void check_finite() const {
        if (!all_finite()) throw error(errc::bad_params, "non-finite matrix entry");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

// Upper-triangular Cholesky factor R with R^t R = G. Throws if a pivot drops
// below pivot_tol (G not positive definite at working precision).
inline Matrix cholesky_upper(const Matrix& g, double pivot_tol = 1e-12) {
    if (g.rows() != g.cols()) throw error(errc::bad_dims, "cholesky needs a square matrix");
    const std::size_t k = g.rows();
    Matrix r(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        double d = g(i, i);
        for (std::size_t t = 0; t < i; ++t) d -= r(t, i) * r(t, i);
        if (!(d > pivot_tol))
            throw error(errc::numerically_singular, "Gram matrix not positive definite");
        r(i, i) = std::sqrt(d);
        for (std::size_t j = i + 1; j < k; ++j) {
            double s = g(i, j);
            for (std::size_t t = 0; t < i; ++t) s -= r(t, i) * r(t, j);
            r(i, j) = s / r(i, i);
        }
    }
    return r;
}

// Determinant by LU with partial pivoting.
inline double det(const Matrix& a) {
    if (a.rows() != a.cols()) throw error(errc::bad_dims, "determinant needs a square matrix");
    const std::size_t n = a.rows();
    Matrix lu = a;
    double d = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(lu(r, c)) > std::abs(lu(p, c))) p = r;
        if (lu(p, c) == 0.0) return 0.0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(p, j), lu(c, j));
            d = -d;
        }
        d *= lu(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = lu(r, c) / lu(c, c);
            for (std::size_t j = c; j < n; ++j) lu(r, j) -= f * lu(c, j);
        }
    }
    return d;
}

// Gauss-Jordan inverse with partial pivoting.
inline Matrix inverse(const Matrix& a, double pivot_tol = 1e-12) {
    if (a.rows() != a.cols()) throw error(errc::bad_dims, "inverse needs a square matrix");
    const std::size_t n = a.rows();
    Matrix w = a;
    Matrix inv = Matrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(w(r, c)) > std::abs(w(p, c))) p = r;
        if (std::abs(w(p, c)) <= pivot_tol)
            throw error(errc::numerically_singular, "matrix not invertible");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w(p, j), w(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        const double piv = w(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            w(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = w(r, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                w(r, j) -= f * w(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

struct QrThin {
    Matrix q; // rows x cols, orthonormal columns
    Matrix r; // cols x cols, upper triangular, positive diagonal
};

// Thin Householder QR with the sign convention R_ii > 0 (unique factor for a
// full-rank input; makes QR of a Gaussian matrix Haar-distributed).
inline QrThin qr_thin(const Matrix& a) {
    const std::size_t m = a.rows(), k = a.cols();
    if (k > m) throw error(errc::bad_dims, "qr_thin needs rows >= cols");
    Matrix w = a;                      // becomes R in its upper triangle
    Matrix qfull = Matrix::identity(m); // accumulated Q
    std::vector<double> v(m);
    for (std::size_t c = 0; c < k; ++c) {
        double norm = 0.0;
        for (std::size_t r = c; r < m; ++r) norm += w(r, c) * w(r, c);
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        const double alpha = (w(c, c) >= 0.0) ? -norm : norm;
        double vnorm2 = 0.0;
        for (std::size_t r = c; r < m; ++r) {
            v[r] = w(r, c);
            if (r == c) v[r] -= alpha;
            vnorm2 += v[r] * v[r];
        }
        if (vnorm2 == 0.0) continue;
        // apply H = I - 2 v v^t / (v^t v) to W (left) and to Qfull (right)
        for (std::size_t j = c; j < k; ++j) {
            double s = 0.0;
            for (std::size_t r = c; r < m; ++r) s += v[r] * w(r, j);
            const double f = 2.0 * s / vnorm2;
            for (std::size_t r = c; r < m; ++r) w(r, j) -= f * v[r];
        }
        for (std::size_t i = 0; i < m; ++i) {
            double s = 0.0;
            for (std::size_t r = c; r < m; ++r) s += qfull(i, r) * v[r];
            const double f = 2.0 * s / vnorm2;
            for (std::size_t r = c; r < m; ++r) qfull(i, r) -= f * v[r];
        }
    }
    QrThin out;
    out.q = Matrix(m, k);
    out.r = Matrix(k, k);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j) out.q(i, j) = qfull(i, j);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) out.r(i, j) = w(i, j);
    for (std::size_t i = 0; i < k; ++i) {
        if (out.r(i, i) < 0.0) {
            for (std::size_t j = i; j < k; ++j) out.r(i, j) = -out.r(i, j);
            for (std::size_t r = 0; r < m; ++r) out.q(r, i) = -out.q(r, i);
        }
    }
    return out;
}

} // namespace latcode
