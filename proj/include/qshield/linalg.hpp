// Copyright 2026 The qshield Authors
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
#include <initializer_list>
#include <span>
#include <vector>

namespace qshield {

using Complex = std::complex<double>;

/// Hermiticity tolerance (absolute, max-norm) used throughout the library.
inline constexpr double kHermitianTolerance = 1e-9;

/**
 * Dense complex matrix with row-major storage.
 *
 * Instances are immutable values: every operation below returns a fresh
 * matrix. Sized for the 3x3 single-qutrit and 9x9 two-qutrit problems but
 * works for any small dimension.
 */
class ComplexMatrix {
  public:
    /// Rejects rows*cols != entries.size() and zero dimensions.
    ComplexMatrix(std::size_t rows, std::size_t cols,
                  std::vector<Complex> entries);

    /// Nested row lists, e.g. {{1, 0}, {0, 1}}. Ragged input is rejected.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> diag);
    static ComplexMatrix diagonal(std::initializer_list<Complex> diag);
    /// Column vector |v><v|.
    static ComplexMatrix outer(std::span<const Complex> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    const Complex& operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }
    std::span<const Complex> entries() const noexcept { return entries_; }

    friend bool operator==(const ComplexMatrix&,
                           const ComplexMatrix&) = default;

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

struct HermitianEigenResult {
    std::vector<double> eigenvalues;   // ascending
    ComplexMatrix eigenvectors;        // column i pairs with eigenvalues[i]
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, Complex factor);

/// Transpose on the second qutrit of a 9x9 two-qutrit operator. With the
/// composite index 3j+k, out[(j,k),(j',k')] = in[(j,k'),(j',k)].
ComplexMatrix partial_transpose_b(const ComplexMatrix& rho);

/// Cyclic complex Jacobi. Throws InvalidInput for non-square or
/// non-Hermitian input, NumericalFailure when 100 sweeps do not reach an
/// off-diagonal Frobenius norm of 1e-12 * ||A||_F.
HermitianEigenResult hermitian_eigen(const ComplexMatrix& a);

Complex trace(const ComplexMatrix& a);

double max_norm(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& a,
                  double tolerance = kHermitianTolerance);
/// (A + A^dagger) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& a);

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return matmul(a, b);
}
inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    return add(a, b);
}
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    return subtract(a, b);
}
inline ComplexMatrix operator*(Complex factor, const ComplexMatrix& a) {
    return scale(a, factor);
}

} // namespace qshield
