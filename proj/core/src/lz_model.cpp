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

#include "lzqt/lz_model.hpp"

#include <cmath>
#include <sstream>

#include "lzqt/errors.hpp"

namespace lzqt {

void LzParams::validate() const {
    if (!(std::isfinite(v) && v > 0.0)) {
        std::ostringstream os;
        os << "lz.v must be a finite positive number (got " << v << ")";
        throw ConfigError(os.str());
    }
    if (!(std::isfinite(delta) && delta > 0.0)) {
        std::ostringstream os;
        os << "lz.delta must be a finite positive number (got " << delta << ")";
        throw ConfigError(os.str());
    }
}

Operator2 h_lz(double t, const LzParams& p) noexcept {
    const double vt = p.v * t;
    return {{Complex{vt}, Complex{p.delta}, Complex{p.delta}, Complex{-vt}}};
}

InstantSpectrum instant_spectrum(double t, const LzParams& p) noexcept {
    const double vt = p.v * t;
    const double d2 = p.delta * p.delta;
    const double ep = std::sqrt(vt * vt + d2);

    // Eigenvector of eigenvalue s is proportional to Delta|e> + (s - vt)|g>.
    const double plus_gap = vt > 0.0 ? d2 / (ep + vt) : ep - vt;       // eps_+ - vt >= 0
    const double minus_gap = vt > 0.0 ? -(ep + vt) : -d2 / (ep - vt);  // eps_- - vt <= 0

    const double np = std::sqrt(d2 + plus_gap * plus_gap);
    const double nm = std::sqrt(d2 + minus_gap * minus_gap);

    InstantSpectrum s;
    s.eps_plus = ep;
    s.eps_minus = -ep;
    s.ket_plus = {Complex{p.delta / np}, Complex{plus_gap / np}};
    s.ket_minus = {Complex{p.delta / nm}, Complex{minus_gap / nm}};
    return s;
}

}  // namespace lzqt
