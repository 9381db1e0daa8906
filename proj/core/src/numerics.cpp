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

#include "lzqt/numerics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace lzqt {

StateVector normalized(const StateVector& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::domain_error("normalized: vector has zero or non-finite norm");
    }
    return (1.0 / n) * v;
}

double frobenius_norm(const Operator2& op) noexcept {
    double s = 0.0;
    for (const auto& x : op.m) s += std::norm(x);
    return std::sqrt(s);
}

double hermiticity_defect(const Operator2& op) noexcept {
    return std::max({std::abs(op.m[0].imag()), std::abs(op.m[3].imag()),
                     std::abs(op.m[1] - std::conj(op.m[2]))});
}

std::array<double, 2> hermitian_eigenvalues(const Operator2& op) noexcept {
    const double a = op.m[0].real();
    const double d = op.m[3].real();
    const Complex b = 0.5 * (op.m[1] + std::conj(op.m[2]));
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(b));
    return {mean - radius, mean + radius};
}

double spectral_norm(const Operator2& op) noexcept {
    // Largest eigenvalue of op^dag op = [[p, r], [conj(r), q]]. The radius is a
    // sum of squares, so nearly equal singular values lose no precision.
    const double p = std::norm(op.m[0]) + std::norm(op.m[2]);
    const double q = std::norm(op.m[1]) + std::norm(op.m[3]);
    const Complex r = std::conj(op.m[0]) * op.m[1] + std::conj(op.m[2]) * op.m[3];
    const double half_diff = 0.5 * (p - q);
    return std::sqrt(0.5 * (p + q) + std::sqrt(half_diff * half_diff + std::norm(r)));
}

namespace {

void require_density_like(const Operator2& x, const char* name) {
    const double defect = hermiticity_defect(x);
    if (!(defect <= 1e-8)) {
        throw std::invalid_argument(std::string("trace_distance: ") + name +
                                    " is not Hermitian (defect " + std::to_string(defect) + ")");
    }
    const double tr_err = std::abs(trace(x) - 1.0);
    if (!(tr_err <= 1e-6)) {
        throw std::invalid_argument(std::string("trace_distance: ") + name +
                                    " does not have unit trace (error " + std::to_string(tr_err) + ")");
    }
}

}  // namespace

double trace_distance(const Operator2& rho, const Operator2& sigma) {
    require_density_like(rho, "rho");
    require_density_like(sigma, "sigma");
    const auto ev = hermitian_eigenvalues(rho - sigma);
    return 0.5 * (std::abs(ev[0]) + std::abs(ev[1]));
}

double purity(const Operator2& rho) noexcept { return trace(rho * rho).real(); }

}  // namespace lzqt
