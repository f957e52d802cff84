// Copyright 2026 The diffchem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "diffchem/autodiff/dual.hpp"
#include "diffchem/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace diffchem::linalg {

/// Small dense row-major matrix over a generic scalar.
template <class T> class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T(1);
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T &operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    [[nodiscard]] const std::vector<T> &data() const { return data_; }
    [[nodiscard]] std::vector<T> &data() { return data_; }

    /// Converts element-wise, e.g. from double into a dual scalar.
    template <class U> [[nodiscard]] Matrix<U> cast() const {
        Matrix<U> out(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            out.data()[k] = U(data_[k]);
        }
        return out;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T> Matrix<T> transpose(const Matrix<T> &a) {
    Matrix<T> t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t(j, i) = a(i, j);
        }
    }
    return t;
}

template <class T> Matrix<T> operator*(const Matrix<T> &a, const Matrix<T> &b) {
    if (a.cols() != b.rows()) {
        fail(ErrorKind::InternalConsistency, "matrix product shape mismatch");
    }
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T &aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

template <class T> Matrix<T> operator+(Matrix<T> a, const Matrix<T> &b) {
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        a.data()[k] += b.data()[k];
    }
    return a;
}

template <class T> Matrix<T> operator-(Matrix<T> a, const Matrix<T> &b) {
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        a.data()[k] -= b.data()[k];
    }
    return a;
}

template <class T> Matrix<T> operator*(Matrix<T> a, double s) {
    for (auto &v : a.data()) {
        v = v * s;
    }
    return a;
}

/// Largest |a_ij - b_ij| over primal values.
template <class T> double max_abs_diff(const Matrix<T> &a, const Matrix<T> &b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        m = std::max(m, std::abs(ad::primal(a.data()[k]) - ad::primal(b.data()[k])));
    }
    return m;
}

template <class T> Matrix<double> primal(const Matrix<T> &a) {
    Matrix<double> out(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        out.data()[k] = ad::primal(a.data()[k]);
    }
    return out;
}

template <class T> T trace(const Matrix<T> &a) {
    T t(0);
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) {
        t += a(i, i);
    }
    return t;
}

/// Sum over i, j of a_ij * b_ij.
template <class T> T contract(const Matrix<T> &a, const Matrix<T> &b) {
    T s(0);
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        s += a.data()[k] * b.data()[k];
    }
    return s;
}

} // namespace diffchem::linalg
