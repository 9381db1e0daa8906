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

// dissipation.hpp: jump operators for the two dissipative Landau-Zener models.
//
// Type I: time-independent decay/excitation in the sigma_z basis,
//   C1 = sqrt(1 + tau) sigma_-,  C2 = sqrt(tau) sigma_+,  lambda^2 = gamma.
// Type II: Lindblad operators that project onto the instantaneous eigenstates
//   |eps_-(t)>, |eps_+(t)> of H_LZ(t), with thermal rates
//   gamma1 = 2 pi J (n + 1), gamma2 = 2 pi J n, gamma3 = 2 pi T.
//
// In both cases the master-equation dissipator is
//   lambda^2 sum_m (C_m rho C_m^dag - 1/2 {C_m^dag C_m, rho}).

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <variant>

#include "lzqt/lz_model.hpp"
#include "lzqt/numerics.hpp"

namespace lzqt {

enum class ModelKind { type1, type2 };

struct TypeIParams {
    double gamma = 0.1;  // coupling rate
    double tau = 0.0;    // dimensionless temperature proxy

    friend bool operator==(const TypeIParams&, const TypeIParams&) = default;
    void validate() const;
};

struct TypeIIParams {
    double lambda = 1.0;       // system-bath coupling
    double theta = 0.0;        // spin-coupling direction (radians)
    double temperature = 0.0;  // bath temperature, energy units
    double omega_c = 20.0;     // spectral cutoff
    int spectral_sign = +1;    // sign of the exponent in J; +1 is the growing form

    friend bool operator==(const TypeIIParams&, const TypeIIParams&) = default;
    void validate() const;
};

/// Jump operators C_m (rates folded in) and the coupling lambda at one time.
struct JumpSet {
    std::array<Operator2, 3> storage{};
    std::size_t count = 0;
    double lambda = 0.0;
    double time = 0.0;

    // Filled by the model builders; a JumpSet assembled by hand leaves
    // has_cache false and consumers recompute from `storage`.
    bool has_cache = false;
    Operator2 decay{};         // sum_m C_m^dag C_m
    double norm_sq_sum = 0.0;  // sum_m ||C_m||^2

    std::span<const Operator2> ops() const noexcept { return {storage.data(), count}; }
};

JumpSet type1_jumps(const TypeIParams& p);

/// A = (cos(theta) sigma_z + sin(theta) sigma_x) / 2
Operator2 coupling_matrix(double theta) noexcept;

struct Type2Coefficients {
    Complex a1;  // <eps_-|A|eps_+>; a2 = conj(a1)
    double a3 = 0.0;   // <eps_-|A|eps_->
    double a3p = 0.0;  // <eps_+|A|eps_+>
};

Type2Coefficients type2_coefficients(double t, double theta, const LzParams& lz);
Type2Coefficients type2_coefficients(const InstantSpectrum& spec, const Operator2& coupling) noexcept;

/// 1 / (exp(2 eps_plus / T) - 1), and 0 at T = 0.
double bose_occupation(double eps_plus, double temperature) noexcept;

/// J = 2 eps_plus exp(sign * 2 eps_plus / omega_c). Throws ConfigError if the
/// exponent exceeds 700.
double spectral_density(double eps_plus, double omega_c, int exponent_sign = +1);

JumpSet type2_jumps(double t, const TypeIIParams& p, const LzParams& lz);

/// A fully specified dissipative Landau-Zener model: Hamiltonian plus jump
/// operators at any time.
class JumpModel {
public:
    static JumpModel type1(const LzParams& lz, const TypeIParams& p);
    static JumpModel type2(const LzParams& lz, const TypeIIParams& p);

    ModelKind kind() const noexcept { return kind_; }
    const LzParams& lz() const noexcept { return lz_; }
    std::size_t channel_count() const noexcept { return kind_ == ModelKind::type1 ? 2 : 3; }

    Operator2 hamiltonian(double t) const noexcept { return h_lz(t, lz_); }
    JumpSet jumps(double t) const;

    /// Copy whose lambda^2 is multiplied by `factor`. Used to build
    /// deliberately mis-specified references in validation tests.
    JumpModel with_rate_scale(double factor) const;

    const std::variant<TypeIParams, TypeIIParams>& params() const noexcept { return params_; }

private:
    JumpModel() = default;

    ModelKind kind_ = ModelKind::type1;
    LzParams lz_;
    std::variant<TypeIParams, TypeIIParams> params_;
    Operator2 coupling_{};  // Type II coupling matrix, cached
    double rate_scale_ = 1.0;
    JumpSet type1_cache_{};
};

/// lambda^2 sum_m (C rho C^dag - 1/2 {C^dag C, rho}) for the model's jumps at t.
Operator2 dissipator(const JumpModel& model, double t, const Operator2& rho);

/// Same, for an already evaluated jump set.
Operator2 dissipator(const JumpSet& jumps, const Operator2& rho) noexcept;

}  // namespace lzqt
