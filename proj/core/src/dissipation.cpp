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

#include "lzqt/dissipation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lzqt/errors.hpp"

namespace lzqt {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

std::string describe(const char* key, const char* constraint, double value) {
    std::ostringstream os;
    os << key << " must be " << constraint << " (got " << value << ")";
    return os.str();
}

JumpSet type2_jumps_with(double t, const TypeIIParams& p, const LzParams& lz, const Operator2& coupling) {
    const InstantSpectrum spec = instant_spectrum(t, lz);
    const Type2Coefficients a = type2_coefficients(spec, coupling);

    const double n = bose_occupation(spec.eps_plus, p.temperature);
    const double j = spectral_density(spec.eps_plus, p.omega_c, p.spectral_sign);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double gamma1 = two_pi * j * (n + 1.0);
    const double gamma2 = two_pi * j * n;
    const double gamma3 = two_pi * p.temperature;

    const Operator2 down = outer(spec.ket_minus, spec.ket_plus);  // |eps_-><eps_+|
    const Operator2 up = outer(spec.ket_plus, spec.ket_minus);    // |eps_+><eps_-|
    const Operator2 dephase = a.a3 * projector(spec.ket_minus) + a.a3p * projector(spec.ket_plus);

    JumpSet js;
    js.count = 3;
    js.lambda = p.lambda;
    js.time = t;
    js.storage[0] = (std::sqrt(gamma1) * a.a1) * down;
    js.storage[1] = (std::sqrt(gamma2) * std::conj(a.a1)) * up;
    js.storage[2] = std::sqrt(gamma3) * dephase;

    // Every C_m is diagonal or off-diagonal in the instantaneous eigenbasis,
    // so sum C^dag C = k_plus P_+ + k_minus P_-.
    const double a1_sq = std::norm(a.a1);
    const double k_plus = gamma1 * a1_sq + gamma3 * a.a3p * a.a3p;
    const double k_minus = gamma2 * a1_sq + gamma3 * a.a3 * a.a3;
    js.has_cache = true;
    js.decay = k_plus * projector(spec.ket_plus) + k_minus * projector(spec.ket_minus);
    js.norm_sq_sum = (gamma1 + gamma2) * a1_sq + gamma3 * std::max(a.a3 * a.a3, a.a3p * a.a3p);
    return js;
}

}  // namespace

void TypeIParams::validate() const {
    require(std::isfinite(gamma) && gamma >= 0.0, describe("type1.gamma", "a finite non-negative number", gamma));
    require(std::isfinite(tau) && tau >= 0.0, describe("type1.tau", "a finite non-negative number", tau));
}

void TypeIIParams::validate() const {
    require(std::isfinite(lambda) && lambda >= 0.0,
            describe("type2.lambda", "a finite non-negative number", lambda));
    require(std::isfinite(theta), describe("type2.theta", "finite", theta));
    require(std::isfinite(temperature) && temperature >= 0.0,
            describe("type2.temperature", "a finite non-negative number", temperature));
    require(std::isfinite(omega_c) && omega_c > 0.0, describe("type2.omega_c", "a finite positive number", omega_c));
    require(spectral_sign == 1 || spectral_sign == -1,
            describe("type2.spectral_sign", "+1 or -1", static_cast<double>(spectral_sign)));
}

JumpSet type1_jumps(const TypeIParams& p) {
    p.validate();
    JumpSet js;
    js.count = 2;
    js.lambda = std::sqrt(p.gamma);
    js.storage[0] = std::sqrt(1.0 + p.tau) * sigma_minus();
    js.storage[1] = std::sqrt(p.tau) * sigma_plus();
    js.has_cache = true;
    js.decay = (1.0 + p.tau) * projector(ket_e()) + p.tau * projector(ket_g());
    js.norm_sq_sum = 1.0 + 2.0 * p.tau;
    return js;
}

Operator2 coupling_matrix(double theta) noexcept {
    return 0.5 * (std::cos(theta) * sigma_z() + std::sin(theta) * sigma_x());
}

Type2Coefficients type2_coefficients(const InstantSpectrum& spec, const Operator2& coupling) noexcept {
    Type2Coefficients c;
    c.a1 = inner(spec.ket_minus, matvec(coupling, spec.ket_plus));
    c.a3 = expectation(coupling, spec.ket_minus).real();
    c.a3p = expectation(coupling, spec.ket_plus).real();
    return c;
}

Type2Coefficients type2_coefficients(double t, double theta, const LzParams& lz) {
    return type2_coefficients(instant_spectrum(t, lz), coupling_matrix(theta));
}

double bose_occupation(double eps_plus, double temperature) noexcept {
    if (temperature <= 0.0) return 0.0;
    return 1.0 / std::expm1(2.0 * eps_plus / temperature);
}

double spectral_density(double eps_plus, double omega_c, int exponent_sign) {
    const double exponent = (exponent_sign < 0 ? -2.0 : 2.0) * eps_plus / omega_c;
    if (exponent > 700.0) {
        std::ostringstream os;
        os << "spectral density exponent " << exponent << " exceeds 700 (eps_plus=" << eps_plus
           << ", omega_c=" << omega_c << "); increase omega_c or use spectral_sign=-1";
        throw ConfigError(os.str());
    }
    return 2.0 * eps_plus * std::exp(exponent);
}

JumpSet type2_jumps(double t, const TypeIIParams& p, const LzParams& lz) {
    return type2_jumps_with(t, p, lz, coupling_matrix(p.theta));
}

JumpModel JumpModel::type1(const LzParams& lz, const TypeIParams& p) {
    lz.validate();
    JumpModel m;
    m.kind_ = ModelKind::type1;
    m.lz_ = lz;
    m.params_ = p;
    m.type1_cache_ = type1_jumps(p);
    return m;
}

JumpModel JumpModel::type2(const LzParams& lz, const TypeIIParams& p) {
    lz.validate();
    p.validate();
    JumpModel m;
    m.kind_ = ModelKind::type2;
    m.lz_ = lz;
    m.params_ = p;
    m.coupling_ = coupling_matrix(p.theta);
    return m;
}

JumpSet JumpModel::jumps(double t) const {
    JumpSet js;
    if (kind_ == ModelKind::type1) {
        js = type1_cache_;
        js.time = t;
    } else {
        js = type2_jumps_with(t, std::get<TypeIIParams>(params_), lz_, coupling_);
    }
    if (rate_scale_ != 1.0) js.lambda *= std::sqrt(rate_scale_);
    return js;
}

JumpModel JumpModel::with_rate_scale(double factor) const {
    if (!(std::isfinite(factor) && factor >= 0.0)) {
        throw ConfigError("rate scale must be a finite non-negative number");
    }
    JumpModel m = *this;
    m.rate_scale_ *= factor;
    return m;
}

Operator2 dissipator(const JumpSet& jumps, const Operator2& rho) noexcept {
    Operator2 out{};
    Operator2 decay{};
    for (const Operator2& c : jumps.ops()) {
        if (c == zero2()) continue;
        const Operator2 cd = adjoint(c);
        out += c * rho * cd;
        if (!jumps.has_cache) decay += cd * c;
    }
    if (jumps.has_cache) decay = jumps.decay;
    out -= 0.5 * (decay * rho + rho * decay);
    return (jumps.lambda * jumps.lambda) * out;
}

Operator2 dissipator(const JumpModel& model, double t, const Operator2& rho) {
    return dissipator(model.jumps(t), rho);
}

}  // namespace lzqt
