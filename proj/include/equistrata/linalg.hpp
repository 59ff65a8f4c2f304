#ifndef EQUISTRATA_LINALG_HPP
#define EQUISTRATA_LINALG_HPP

#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

#include "equistrata/rational.hpp"

namespace equistrata {

/*
 * Dense matrix over an exact field F and plain Gaussian elimination.
 * F needs 0/1 construction from int, +,-,*,/, == and a truthy nonzero test
 * via operator==(int). Pivoting picks the first nonzero entry; with exact
 * scalars there is nothing to stabilize.
 */
template <class F>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(size_t r, size_t c) : rows_(r), cols_(c), data_(r * c, F(0)) {}

    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    F& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const F& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    std::vector<F> row(size_t i) const {
        return std::vector<F>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    void set_row(size_t i, const std::vector<F>& v) {
        assert(v.size() == cols_);
        std::copy(v.begin(), v.end(), data_.begin() + i * cols_);
    }

    void append_row(const std::vector<F>& v) {
        assert(cols_ == 0 || v.size() == cols_);
        if (cols_ == 0) cols_ = v.size();
        data_.insert(data_.end(), v.begin(), v.end());
        ++rows_;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat operator*(const Mat& o) const {
        assert(cols_ == o.rows_);
        Mat r(rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const F& a = (*this)(i, k);
                if (a == F(0)) continue;
                for (size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    Mat operator+(const Mat& o) const {
        Mat r(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
        return r;
    }

    Mat operator-(const Mat& o) const {
        Mat r(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
        return r;
    }

    Mat scaled(const F& c) const {
        Mat r(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = c * data_[i];
        return r;
    }

    std::vector<F> apply(const std::vector<F>& v) const {
        assert(v.size() == cols_);
        std::vector<F> r(rows_, F(0));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (!((*this)(i, j) == F(0))) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!(x == F(0))) return false;
        return true;
    }

private:
    size_t rows_, cols_;
    std::vector<F> data_;
};

using QMat = Mat<Rational>;

// In-place reduced row echelon form; returns pivot column indices.
template <class F>
std::vector<size_t> rref(Mat<F>& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t p = r;
        while (p < m.rows() && m(p, c) == F(0)) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        F inv = F(1) / m(r, c);
        for (size_t j = c; j < m.cols(); ++j) m(r, j) = inv * m(r, j);
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == F(0)) continue;
            F f = m(i, c);
            for (size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
size_t rank(Mat<F> m) {
    return rref(m).size();
}

// Basis of { x : m x = 0 }, one row per basis vector.
template <class F>
Mat<F> nullspace(Mat<F> m) {
    std::vector<size_t> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : pivots) is_pivot[c] = true;
    Mat<F> basis(0, m.cols());
    for (size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<F> v(m.cols(), F(0));
        v[c] = F(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F(0) - m(r, c);
        basis.append_row(v);
    }
    return basis;
}

// One solution of A x = b, if any.
template <class F>
std::optional<std::vector<F>> solve(const Mat<F>& a, const std::vector<F>& b) {
    Mat<F> aug(a.rows(), a.cols() + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    std::vector<size_t> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    std::vector<F> x(a.cols(), F(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
    return x;
}

template <class F>
Mat<F> inverse(const Mat<F>& a) {
    assert(a.rows() == a.cols());
    size_t n = a.rows();
    Mat<F> aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = F(1);
    }
    if (rref(aug).size() != n) throw std::runtime_error("singular matrix");
    Mat<F> inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

// Canonical basis (RREF rows) of the span of the rows.
template <class F>
Mat<F> row_space_basis(Mat<F> m) {
    size_t r = rref(m).size();
    Mat<F> basis(0, m.cols());
    for (size_t i = 0; i < r; ++i) basis.append_row(m.row(i));
    return basis;
}

template <class F>
bool in_row_space(const Mat<F>& basis, const std::vector<F>& v) {
    Mat<F> m = basis;
    m.append_row(v);
    return rank(m) == basis.rows();
}

// Intersection of two row spaces, as canonical row basis.
template <class F>
Mat<F> intersect_row_spaces(const Mat<F>& a, const Mat<F>& b) {
    assert(a.cols() == b.cols());
    if (a.rows() == 0 || b.rows() == 0) return Mat<F>(0, a.cols());
    // c = (u, w) with u A = w B; stack [A^T | -B^T] and take its nullspace.
    Mat<F> sys(a.cols(), a.rows() + b.rows());
    for (size_t j = 0; j < a.cols(); ++j) {
        for (size_t i = 0; i < a.rows(); ++i) sys(j, i) = a(i, j);
        for (size_t i = 0; i < b.rows(); ++i) sys(j, a.rows() + i) = F(0) - b(i, j);
    }
    Mat<F> combos = nullspace(sys);
    Mat<F> result(0, a.cols());
    for (size_t k = 0; k < combos.rows(); ++k) {
        std::vector<F> v(a.cols(), F(0));
        for (size_t i = 0; i < a.rows(); ++i)
            for (size_t j = 0; j < a.cols(); ++j) v[j] += combos(k, i) * a(i, j);
        result.append_row(v);
    }
    return row_space_basis(result);
}

}  // namespace equistrata

#endif
