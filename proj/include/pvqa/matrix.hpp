// Copyright 2026 The pvqa developers
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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pvqa {

using cdouble = std::complex<double>;

/// Minimal dense row-major matrix. Operator assembly and test oracles only;
/// the statevector path never materializes full unitaries.
template <typename T>
class Dense {
public:
    Dense() = default;

    Dense(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Dense identity(std::size_t n) {
        Dense m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

    Dense operator*(const Dense& rhs) const {
        if (cols_ != rhs.rows_) throw std::invalid_argument("dimension-mismatch: matrix product");
        Dense out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T a = (*this)(i, k);
                if (a == T{}) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
            }
        return out;
    }

    std::vector<T> operator*(const std::vector<T>& v) const {
        if (cols_ != v.size()) throw std::invalid_argument("dimension-mismatch: matrix-vector product");
        std::vector<T> out(rows_, T{});
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend bool operator==(const Dense&, const Dense&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using CMatrix = Dense<cdouble>;
using RMatrix = Dense<double>;

inline CMatrix adjoint(const CMatrix& m) {
    CMatrix out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = std::conj(m(r, c));
    return out;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("dimension-mismatch: matrix comparison");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

}  // namespace pvqa
