#pragma once

#include <cassert>
#include <initializer_list>
#include <utility>
#include <vector>

#include "stacky/errors.hpp"
#include "stacky/numeric.hpp"

namespace stacky {

// Dense integer matrix with arbitrary-precision entries, row-major storage.
// Treated as an immutable value by every algorithm in this library: operations
// return fresh matrices.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        assert(rows >= 0 && cols >= 0);
    }
    IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
        a_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& r : rows) {
            assert(static_cast<int>(r.size()) == cols_);
            for (const Int& x : r) a_.push_back(x);
        }
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }

    static IntMatrix from_columns(int rows, const std::vector<std::vector<Int>>& cols) {
        IntMatrix m(rows, static_cast<int>(cols.size()));
        for (int j = 0; j < m.cols(); ++j) {
            assert(static_cast<int>(cols[j].size()) == rows);
            for (int i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return a_[static_cast<size_t>(i) * cols_ + j];
    }
    const Int& at(int i, int j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return a_[static_cast<size_t>(i) * cols_ + j];
    }

    std::vector<Int> row(int i) const {
        std::vector<Int> r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }
    std::vector<Int> column(int j) const {
        std::vector<Int> c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    IntMatrix operator*(const IntMatrix& other) const {
        if (cols_ != other.rows_) throw DimensionMismatch("matrix product shape mismatch");
        IntMatrix p(rows_, other.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Int& x = at(i, k);
                if (x == 0) continue;
                for (int j = 0; j < other.cols_; ++j) p.at(i, j) += x * other.at(k, j);
            }
        return p;
    }

    std::vector<Int> apply(const std::vector<Int>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw DimensionMismatch("matrix-vector shape mismatch");
        std::vector<Int> out(rows_, Int(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (at(i, j) != 0) out[i] += at(i, j) * v[j];
        return out;
    }

    bool operator==(const IntMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
    }
    bool operator!=(const IntMatrix& other) const { return !(*this == other); }

    bool is_zero() const {
        for (const Int& x : a_)
            if (x != 0) return false;
        return true;
    }

    // Horizontal concatenation [this | other].
    IntMatrix hconcat(const IntMatrix& other) const {
        if (rows_ != other.rows_) throw DimensionMismatch("hconcat row mismatch");
        IntMatrix m(rows_, cols_ + other.cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
            for (int j = 0; j < other.cols_; ++j) m.at(i, cols_ + j) = other.at(i, j);
        }
        return m;
    }

    IntMatrix select_rows(const std::vector<int>& idx) const {
        IntMatrix m(static_cast<int>(idx.size()), cols_);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < cols_; ++j) m.at(i, j) = at(idx[i], j);
        return m;
    }
    IntMatrix select_columns(const std::vector<int>& idx) const {
        IntMatrix m(rows_, static_cast<int>(idx.size()));
        for (int j = 0; j < m.cols(); ++j)
            for (int i = 0; i < rows_; ++i) m.at(i, j) = at(i, idx[j]);
        return m;
    }

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

// Dense rational matrix; same value discipline as IntMatrix.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    RatMatrix(std::initializer_list<std::initializer_list<Rat>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
        a_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& r : rows) {
            assert(static_cast<int>(r.size()) == cols_);
            for (const Rat& x : r) a_.push_back(x);
        }
    }

    static RatMatrix from_int(const IntMatrix& m) {
        RatMatrix r(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) r.at(i, j) = Rat(m.at(i, j));
        return r;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int i, int j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return a_[static_cast<size_t>(i) * cols_ + j];
    }
    const Rat& at(int i, int j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return a_[static_cast<size_t>(i) * cols_ + j];
    }

    RatVector row(int i) const {
        RatVector r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }

    RatVector apply(const RatVector& v) const {
        if (static_cast<int>(v.size()) != cols_) throw DimensionMismatch("matrix-vector shape mismatch");
        RatVector out(rows_, Rat(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
        return out;
    }

    bool operator==(const RatMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
    }

private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

inline RatVector rat_vector(const std::vector<Int>& v) {
    RatVector out;
    out.reserve(v.size());
    for (const Int& x : v) out.emplace_back(x);
    return out;
}

inline Rat dot(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot product length mismatch");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace stacky
