#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace semfields {

// Dense column-major matrix of doubles. Just enough linear algebra for the
// field matrix and its factorization; not a general-purpose library.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
        assert(rows >= 0 && cols >= 0);
    }

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    double& operator()(int i, int j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<std::size_t>(j) * rows_ + i];
    }
    double operator()(int i, int j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<std::size_t>(j) * rows_ + i];
    }

    std::span<double> col(int j) {
        return {data_.data() + static_cast<std::size_t>(j) * rows_, static_cast<std::size_t>(rows_)};
    }
    std::span<const double> col(int j) const {
        return {data_.data() + static_cast<std::size_t>(j) * rows_, static_cast<std::size_t>(rows_)};
    }

    const std::vector<double>& data() const noexcept { return data_; }
    std::vector<double>& data() noexcept { return data_; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    bool operator==(const Matrix& other) const = default;

private:
    int rows_;
    int cols_;
    std::vector<double> data_;
};

double frobenius_norm(const Matrix& m);

}  // namespace semfields
