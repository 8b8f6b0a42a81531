#pragma once

// Dense exact matrices. Everything in this project is desk scale (ranks <= 6,
// cell counts in the hundreds), so no sparsity or pivoting heuristics beyond
// what exactness needs.

#include "skelet/errors.hpp"
#include "skelet/numeric.hpp"

#include <initializer_list>
#include <vector>

namespace skelet {

template <typename T>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(size_t r, size_t c) : rows_(r), cols_(c), a_(r * c, T(0)) {}
    Mat(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            require_internal(row.size() == cols_, "ragged matrix literal");
            for (const auto& x : row) a_.push_back(x);
        }
    }
    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Mat from_rows(const std::vector<std::vector<T>>& rows) {
        Mat m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (size_t i = 0; i < rows.size(); ++i) {
            require_internal(rows[i].size() == m.cols_, "ragged row list");
            for (size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    T& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    std::vector<T> row(size_t i) const {
        return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }
    void set_row(size_t i, const std::vector<T>& v) {
        require_internal(v.size() == cols_, "row size mismatch");
        for (size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
    }
    std::vector<T> col(size_t j) const {
        std::vector<T> v(rows_);
        for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat operator*(const Mat& o) const {
        require_internal(cols_ == o.rows_, "matrix product shape mismatch");
        Mat p(rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                const T& x = (*this)(i, k);
                if (x == 0) continue;
                for (size_t j = 0; j < o.cols_; ++j) p(i, j) += x * o(k, j);
            }
        return p;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        require_internal(v.size() == cols_, "matrix apply shape mismatch");
        std::vector<T> r(rows_, T(0));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    bool is_zero() const {
        for (const auto& x : a_) if (x != 0) return false;
        return true;
    }

    void swap_rows(size_t i, size_t j) {
        for (size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(size_t i, size_t j) {
        for (size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }

  private:
    size_t rows_, cols_;
    std::vector<T> a_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

inline RatMat to_rational(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

// rank by exact Gaussian elimination; works on a copy
size_t rat_rank(RatMat m);
size_t int_rank(const IntMat& m);

// determinant of a square rational matrix
Rat rat_det(RatMat m);
Int int_det(const IntMat& m);

// Solve A x = b over the rationals. Returns false when inconsistent; when the
// system is underdetermined any one solution is produced (free variables 0).
bool rat_solve(RatMat a, RatVec b, RatVec& x);

// basis of the right null space of A (rational column vectors)
std::vector<RatVec> rat_nullspace(RatMat a);

}  // namespace skelet
