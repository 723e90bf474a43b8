#pragma once

#include <cstddef>
#include <vector>

namespace sbscache {

/// Dense row-major n x n matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    bool is_symmetric() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (!((*this)(i, j) == (*this)(j, i))) return false;
        return true;
    }

    Matrix transposed() const {
        Matrix t(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<T> data_;
};

}  // namespace sbscache
