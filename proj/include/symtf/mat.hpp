#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "symtf/errors.hpp"

namespace symtf {

// Dense real matrix, row-major.  Everything at desk scale is at most 8x8,
// so plain O(n^3) algorithms are used throughout.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}
    Mat(std::initializer_list<std::initializer_list<double>> init) {
        rows = static_cast<int>(init.size());
        cols = rows ? static_cast<int>(init.begin()->size()) : 0;
        a.reserve(static_cast<size_t>(rows) * cols);
        for (const auto& row : init) {
            if (static_cast<int>(row.size()) != cols)
                throw BadShape("ragged initializer list");
            for (double x : row) a.push_back(x);
        }
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static Mat zero(int r, int c) { return Mat(r, c); }

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool square() const { return rows == cols; }

    Mat transpose() const {
        Mat m(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    Mat block(int i0, int j0, int r, int c) const {
        if (i0 < 0 || j0 < 0 || i0 + r > rows || j0 + c > cols)
            throw BadShape("block out of range");
        Mat m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
        return m;
    }

    void set_block(int i0, int j0, const Mat& m) {
        if (i0 < 0 || j0 < 0 || i0 + m.rows > rows || j0 + m.cols > cols)
            throw BadShape("set_block out of range");
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) (*this)(i0 + i, j0 + j) = m(i, j);
    }

    Mat operator*(const Mat& b) const {
        if (cols != b.rows) throw BadShape("matrix product shape mismatch");
        Mat m(rows, b.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                double aik = (*this)(i, k);
                if (aik == 0.0) continue;
                for (int j = 0; j < b.cols; ++j) m(i, j) += aik * b(k, j);
            }
        return m;
    }

    std::vector<double> operator*(const std::vector<double>& v) const {
        if (cols != static_cast<int>(v.size())) throw BadShape("matvec shape mismatch");
        std::vector<double> out(static_cast<size_t>(rows), 0.0);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) out[static_cast<size_t>(i)] += (*this)(i, j) * v[static_cast<size_t>(j)];
        return out;
    }

    Mat operator+(const Mat& b) const {
        if (rows != b.rows || cols != b.cols) throw BadShape("matrix sum shape mismatch");
        Mat m = *this;
        for (size_t i = 0; i < a.size(); ++i) m.a[i] += b.a[i];
        return m;
    }
    Mat operator-(const Mat& b) const {
        if (rows != b.rows || cols != b.cols) throw BadShape("matrix diff shape mismatch");
        Mat m = *this;
        for (size_t i = 0; i < a.size(); ++i) m.a[i] -= b.a[i];
        return m;
    }
    Mat operator*(double s) const {
        Mat m = *this;
        for (double& x : m.a) x *= s;
        return m;
    }
    Mat operator-() const { return (*this) * -1.0; }

    bool operator==(const Mat& b) const {
        return rows == b.rows && cols == b.cols && a == b.a;
    }
};

// Largest absolute entry (the entrywise sup norm used for all structural
// tolerances in this library).
inline double max_abs(const Mat& m) {
    double r = 0.0;
    for (double x : m.a) r = std::max(r, std::abs(x));
    return r;
}

inline double max_abs_diff(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw BadShape("max_abs_diff shape mismatch");
    double r = 0.0;
    for (size_t i = 0; i < x.a.size(); ++i) r = std::max(r, std::abs(x.a[i] - y.a[i]));
    return r;
}

// Determinant by LU with partial pivoting.
inline double det(const Mat& m) {
    if (!m.square()) throw BadShape("det of non-square matrix");
    Mat lu = m;
    int n = m.rows;
    double d = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
        if (lu(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(lu(piv, j), lu(k, j));
            d = -d;
        }
        d *= lu(k, k);
        for (int i = k + 1; i < n; ++i) {
            double f = lu(i, k) / lu(k, k);
            for (int j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
    return d;
}

// Inverse by Gauss-Jordan with partial pivoting.
inline Mat inverse(const Mat& m, double tol = 1e-13) {
    if (!m.square()) throw BadShape("inverse of non-square matrix");
    int n = m.rows;
    Mat w = m;
    Mat inv = Mat::identity(n);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(w(i, k)) > std::abs(w(piv, k))) piv = i;
        if (std::abs(w(piv, k)) < tol) throw Error("inverse: matrix is numerically singular");
        if (piv != k)
            for (int j = 0; j < n; ++j) {
                std::swap(w(piv, j), w(k, j));
                std::swap(inv(piv, j), inv(k, j));
            }
        double p = w(k, k);
        for (int j = 0; j < n; ++j) {
            w(k, j) /= p;
            inv(k, j) /= p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            double f = w(i, k);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                w(i, j) -= f * w(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

inline bool is_symmetric(const Mat& m, double tol = 1e-12) {
    if (!m.square()) return false;
    for (int i = 0; i < m.rows; ++i)
        for (int j = i + 1; j < m.cols; ++j)
            if (std::abs(m(i, j) - m(j, i)) > tol) return false;
    return true;
}

} // namespace symtf
