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

#include "qshield/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qshield/errors.hpp"

namespace qshield {

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiRelativeTolerance = 1e-12;

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidInput(std::string(op) + ": shape mismatch " +
                           std::to_string(a.rows()) + "x" +
                           std::to_string(a.cols()) + " vs " +
                           std::to_string(b.rows()) + "x" +
                           std::to_string(b.cols()));
    }
}

// Working storage for the Jacobi iteration; the public type is immutable.
struct Dense {
    std::size_t n;
    std::vector<Complex> data;
    Complex& at(std::size_t r, std::size_t c) { return data[r * n + c]; }
};

double off_diagonal_norm(Dense& m) {
    double sum = 0.0;
    for (std::size_t r = 0; r < m.n; ++r) {
        for (std::size_t c = 0; c < m.n; ++c) {
            if (r != c) {
                sum += std::norm(m.at(r, c));
            }
        }
    }
    return std::sqrt(sum);
}

// Zeroes A(p,q) with the unitary U = diag(1, e^{-i phi}) * R(theta) acting on
// the (p,q) plane, where A(p,q) = |h| e^{i phi}. A <- U^dagger A U, V <- V U.
void rotate(Dense& a, Dense& v, std::size_t p, std::size_t q) {
    const Complex h = a.at(p, q);
    const double habs = std::abs(h);
    if (habs == 0.0) {
        return;
    }
    const Complex phase = h / habs; // e^{i phi}
    const double app = a.at(p, p).real();
    const double aqq = a.at(q, q).real();
    const double theta = (aqq - app) / (2.0 * habs);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                     (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Complex upp = c;
    const Complex upq = s;
    const Complex uqp = -s * std::conj(phase);
    const Complex uqq = c * std::conj(phase);

    const std::size_t n = a.n;
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a.at(k, p);
        const Complex akq = a.at(k, q);
        a.at(k, p) = akp * upp + akq * uqp;
        a.at(k, q) = akp * upq + akq * uqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a.at(p, k);
        const Complex aqk = a.at(q, k);
        a.at(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
        a.at(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
    }
    a.at(p, q) = 0.0;
    a.at(q, p) = 0.0;
    a.at(p, p) = a.at(p, p).real();
    a.at(q, q) = a.at(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v.at(k, p);
        const Complex vkq = v.at(k, q);
        v.at(k, p) = vkp * upp + vkq * uqp;
        v.at(k, q) = vkp * upq + vkq * uqq;
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) {
        throw InvalidInput("ComplexMatrix: dimensions must be positive");
    }
    if (entries_.size() != rows_ * cols_) {
        throw InvalidInput("ComplexMatrix: " + std::to_string(entries_.size()) +
                           " entries for a " + std::to_string(rows_) + "x" +
                           std::to_string(cols_) + " matrix");
    }
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    if (rows_ == 0 || cols_ == 0) {
        throw InvalidInput("ComplexMatrix: dimensions must be positive");
    }
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw InvalidInput("ComplexMatrix: ragged row list");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols, std::vector<Complex>(rows * cols));
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    std::vector<Complex> e(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        e[i * n + i] = 1.0;
    }
    return ComplexMatrix(n, n, std::move(e));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    const std::size_t n = diag.size();
    std::vector<Complex> e(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        e[i * n + i] = diag[i];
    }
    return ComplexMatrix(n, n, std::move(e));
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> diag) {
    return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
    const std::size_t n = v.size();
    std::vector<Complex> e(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            e[r * n + c] = v[r] * std::conj(v[c]);
        }
    }
    return ComplexMatrix(n, n, std::move(e));
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw InvalidInput("matmul: " + std::to_string(a.rows()) + "x" +
                           std::to_string(a.cols()) + " times " +
                           std::to_string(b.rows()) + "x" +
                           std::to_string(b.cols()));
    }
    std::vector<Complex> e(a.rows() * b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols(); ++c) {
                e[r * b.cols() + c] += ark * b(k, c);
            }
        }
    }
    return ComplexMatrix(a.rows(), b.cols(), std::move(e));
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    std::vector<Complex> e(a.rows() * a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            e[c * a.rows() + r] = std::conj(a(r, c));
        }
    }
    return ComplexMatrix(a.cols(), a.rows(), std::move(e));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    std::vector<Complex> e(rows * cols);
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex x = a(ar, ac);
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    e[(ar * b.rows() + br) * cols + ac * b.cols() + bc] =
                        x * b(br, bc);
                }
            }
        }
    }
    return ComplexMatrix(rows, cols, std::move(e));
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "add");
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] += b.entries()[i];
    }
    return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "subtract");
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] -= b.entries()[i];
    }
    return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexMatrix scale(const ComplexMatrix& a, Complex factor) {
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (auto& x : e) {
        x *= factor;
    }
    return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexMatrix partial_transpose_b(const ComplexMatrix& rho) {
    if (rho.rows() != 9 || rho.cols() != 9) {
        throw InvalidInput("partial_transpose_b: expected 9x9, got " +
                           std::to_string(rho.rows()) + "x" +
                           std::to_string(rho.cols()));
    }
    std::vector<Complex> e(81);
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = 0; k < 3; ++k) {
            for (std::size_t jp = 0; jp < 3; ++jp) {
                for (std::size_t kp = 0; kp < 3; ++kp) {
                    e[(3 * j + k) * 9 + 3 * jp + kp] =
                        rho(3 * j + kp, 3 * jp + k);
                }
            }
        }
    }
    return ComplexMatrix(9, 9, std::move(e));
}

HermitianEigenResult hermitian_eigen(const ComplexMatrix& a) {
    if (!a.is_square()) {
        throw InvalidInput("hermitian_eigen: matrix is not square");
    }
    if (!is_hermitian(a)) {
        throw InvalidInput("hermitian_eigen: matrix is not Hermitian within " +
                           std::to_string(kHermitianTolerance));
    }
    const std::size_t n = a.rows();
    Dense work{n, std::vector<Complex>(a.entries().begin(), a.entries().end())};
    Dense vecs{n, std::vector<Complex>(n * n)};
    for (std::size_t i = 0; i < n; ++i) {
        vecs.at(i, i) = 1.0;
        work.at(i, i) = work.at(i, i).real();
    }

    const double threshold = kJacobiRelativeTolerance * frobenius_norm(a);
    bool converged = off_diagonal_norm(work) <= threshold;
    for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                rotate(work, vecs, p, q);
            }
        }
        converged = off_diagonal_norm(work) <= threshold;
    }
    if (!converged) {
        throw NumericalFailure("hermitian_eigen: no convergence after " +
                               std::to_string(kMaxJacobiSweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) {
                         return work.at(x, x).real() < work.at(y, y).real();
                     });

    std::vector<double> values(n);
    std::vector<Complex> sorted(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = work.at(order[i], order[i]).real();
        for (std::size_t r = 0; r < n; ++r) {
            sorted[r * n + i] = vecs.at(r, order[i]);
        }
    }
    return {std::move(values), ComplexMatrix(n, n, std::move(sorted))};
}

Complex trace(const ComplexMatrix& a) {
    if (!a.is_square()) {
        throw InvalidInput("trace: matrix is not square");
    }
    Complex sum{};
    for (std::size_t i = 0; i < a.rows(); ++i) {
        sum += a(i, i);
    }
    return sum;
}

double max_norm(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& x : a.entries()) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double frobenius_norm(const ComplexMatrix& a) {
    double sum = 0.0;
    for (const auto& x : a.entries()) {
        sum += std::norm(x);
    }
    return std::sqrt(sum);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return m;
}

bool is_hermitian(const ComplexMatrix& a, double tolerance) {
    if (!a.is_square()) {
        return false;
    }
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = r; c < a.cols(); ++c) {
            if (std::abs(a(r, c) - std::conj(a(c, r))) > tolerance) {
                return false;
            }
        }
    }
    return true;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
    return scale(add(a, dagger(a)), 0.5);
}

} // namespace qshield
