// Copyright 2026 The lzqt Authors
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

// numerics.hpp: fixed-size complex linear algebra for a single qubit.
//
// Everything here is dimension 2 and closed form. The basis ordering is
// {|e>, |g>}, where |e> and |g> are the sigma_z eigenstates with eigenvalues
// +1 and -1.

#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace lzqt {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Two-component amplitude vector (c_e, c_g). Also used for unnormalized
/// intermediate results such as C|phi>.
struct StateVector {
    Complex e{};
    Complex g{};

    friend bool operator==(const StateVector&, const StateVector&) = default;

    double norm_squared() const noexcept { return std::norm(e) + std::norm(g); }
    double norm() const noexcept { return std::sqrt(norm_squared()); }

    StateVector& operator*=(Complex s) noexcept {
        e *= s;
        g *= s;
        return *this;
    }
    StateVector& operator*=(double s) noexcept {
        e *= s;
        g *= s;
        return *this;
    }
    friend StateVector operator*(Complex s, StateVector v) noexcept { return v *= s; }
    friend StateVector operator*(double s, StateVector v) noexcept { return v *= s; }
    friend StateVector operator+(const StateVector& a, const StateVector& b) noexcept {
        return {a.e + b.e, a.g + b.g};
    }
    friend StateVector operator-(const StateVector& a, const StateVector& b) noexcept {
        return {a.e - b.e, a.g - b.g};
    }
};

inline constexpr StateVector ket_e() noexcept { return {Complex{1.0, 0.0}, Complex{}}; }
inline constexpr StateVector ket_g() noexcept { return {Complex{}, Complex{1.0, 0.0}}; }

/// <a|b>
inline Complex inner(const StateVector& a, const StateVector& b) noexcept {
    return std::conj(a.e) * b.e + std::conj(a.g) * b.g;
}

/// Returns v / |v|. Throws std::domain_error for the zero vector.
StateVector normalized(const StateVector& v);

/// Row-major 2x2 complex matrix: [[m00, m01], [m10, m11]].
struct Operator2 {
    std::array<Complex, 4> m{};

    constexpr Complex& operator()(int r, int c) noexcept { return m[static_cast<std::size_t>(2 * r + c)]; }
    constexpr const Complex& operator()(int r, int c) const noexcept {
        return m[static_cast<std::size_t>(2 * r + c)];
    }

    friend bool operator==(const Operator2&, const Operator2&) = default;

    Operator2& operator+=(const Operator2& o) noexcept {
        for (std::size_t k = 0; k < 4; ++k) m[k] += o.m[k];
        return *this;
    }
    Operator2& operator-=(const Operator2& o) noexcept {
        for (std::size_t k = 0; k < 4; ++k) m[k] -= o.m[k];
        return *this;
    }
    Operator2& operator*=(Complex s) noexcept {
        for (auto& x : m) x *= s;
        return *this;
    }
    Operator2& operator*=(double s) noexcept {
        for (auto& x : m) x *= s;
        return *this;
    }

    friend Operator2 operator+(Operator2 a, const Operator2& b) noexcept { return a += b; }
    friend Operator2 operator-(Operator2 a, const Operator2& b) noexcept { return a -= b; }
    friend Operator2 operator*(Complex s, Operator2 a) noexcept { return a *= s; }
    friend Operator2 operator*(double s, Operator2 a) noexcept { return a *= s; }

    friend Operator2 operator*(const Operator2& a, const Operator2& b) noexcept {
        Operator2 r;
        r.m[0] = a.m[0] * b.m[0] + a.m[1] * b.m[2];
        r.m[1] = a.m[0] * b.m[1] + a.m[1] * b.m[3];
        r.m[2] = a.m[2] * b.m[0] + a.m[3] * b.m[2];
        r.m[3] = a.m[2] * b.m[1] + a.m[3] * b.m[3];
        return r;
    }
};

// Named operators in the {|e>, |g>} basis.
inline constexpr Operator2 identity2() noexcept { return {{Complex{1}, Complex{}, Complex{}, Complex{1}}}; }
inline constexpr Operator2 zero2() noexcept { return {}; }
inline constexpr Operator2 sigma_x() noexcept { return {{Complex{}, Complex{1}, Complex{1}, Complex{}}}; }
inline constexpr Operator2 sigma_y() noexcept {
    return {{Complex{}, Complex{0, -1}, Complex{0, 1}, Complex{}}};
}
inline constexpr Operator2 sigma_z() noexcept { return {{Complex{1}, Complex{}, Complex{}, Complex{-1}}}; }
/// sigma_+ = |e><g|
inline constexpr Operator2 sigma_plus() noexcept { return {{Complex{}, Complex{1}, Complex{}, Complex{}}}; }
/// sigma_- = |g><e|
inline constexpr Operator2 sigma_minus() noexcept { return {{Complex{}, Complex{}, Complex{1}, Complex{}}}; }

inline StateVector matvec(const Operator2& op, const StateVector& v) noexcept {
    return {op.m[0] * v.e + op.m[1] * v.g, op.m[2] * v.e + op.m[3] * v.g};
}

inline Operator2 adjoint(const Operator2& op) noexcept {
    return {{std::conj(op.m[0]), std::conj(op.m[2]), std::conj(op.m[1]), std::conj(op.m[3])}};
}

/// <phi|op|phi>
inline Complex expectation(const Operator2& op, const StateVector& phi) noexcept {
    return inner(phi, matvec(op, phi));
}

inline Complex trace(const Operator2& op) noexcept { return op.m[0] + op.m[3]; }

/// |a><b|
inline Operator2 outer(const StateVector& a, const StateVector& b) noexcept {
    const Complex be = std::conj(b.e);
    const Complex bg = std::conj(b.g);
    return {{a.e * be, a.e * bg, a.g * be, a.g * bg}};
}

inline Operator2 projector(const StateVector& v) noexcept { return outer(v, v); }

/// Frobenius norm.
double frobenius_norm(const Operator2& op) noexcept;

/// Largest deviation |op - op^dagger| over entries.
double hermiticity_defect(const Operator2& op) noexcept;

/// Eigenvalues of a Hermitian 2x2 matrix (lower, upper), closed form.
/// Only the Hermitian part of `op` is used.
std::array<double, 2> hermitian_eigenvalues(const Operator2& op) noexcept;

/// Largest singular value. For a positive semidefinite matrix this is the
/// largest eigenvalue.
double spectral_norm(const Operator2& op) noexcept;

/// Half the sum of absolute eigenvalues of (rho - sigma). Both arguments must be
/// Hermitian within 1e-8 and have unit trace within 1e-6; otherwise throws
/// std::invalid_argument.
double trace_distance(const Operator2& rho, const Operator2& sigma);

/// tr(rho^2)
double purity(const Operator2& rho) noexcept;

}  // namespace lzqt
