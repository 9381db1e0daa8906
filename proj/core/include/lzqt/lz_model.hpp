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

// lz_model.hpp: the Landau-Zener Hamiltonian H(t) = v t sigma_z + Delta sigma_x
// and its instantaneous eigen-decomposition.

#pragma once

#include "lzqt/numerics.hpp"

namespace lzqt {

struct LzParams {
    double v = 0.1;      // sweep velocity (energy / time)
    double delta = 1.0;  // transverse field

    friend bool operator==(const LzParams&, const LzParams&) = default;

    /// Throws ConfigError unless v > 0 and delta > 0 (both finite).
    void validate() const;
};

struct InstantSpectrum {
    double eps_plus = 0.0;
    double eps_minus = 0.0;
    StateVector ket_plus;
    StateVector ket_minus;
};

Operator2 h_lz(double t, const LzParams& p) noexcept;

/// eps_plus(t) = sqrt(v^2 t^2 + Delta^2)
inline double eps_plus(double t, const LzParams& p) noexcept {
    const double vt = p.v * t;
    return std::sqrt(vt * vt + p.delta * p.delta);
}

/// Eigenpairs of h_lz(t). Both eigenvectors have a real, non-negative
/// amplitude on |e>; the differences eps_pm - v t are evaluated without
/// cancellation for either sign of v t.
InstantSpectrum instant_spectrum(double t, const LzParams& p) noexcept;

}  // namespace lzqt
