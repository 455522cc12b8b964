// Copyright 2026 The qwit authors
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

#include <numbers>

namespace qwit::constants {

// 2019 SI defining constants.
inline constexpr double planck_J_s = 6.62607015e-34;
inline constexpr double elementary_charge_C = 1.602176634e-19;
inline constexpr double speed_of_light_m_s = 299792458.0;
inline constexpr double boltzmann_J_K = 1.380649e-23;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * pi;

// Derived, kept as constexpr expressions so every unit factor traces back
// to the defining constants above.
inline constexpr double planck_eV_s = planck_J_s / elementary_charge_C;
inline constexpr double hbar_eV_s = planck_eV_s / two_pi;
inline constexpr double hbar_ueV_ps = hbar_eV_s * 1e6 * 1e12;  // ~658.212 ueV*ps
inline constexpr double speed_of_light_cm_fs = speed_of_light_m_s * 1e2 * 1e-15;

// Wavenumber (cm^-1) to angular frequency in rad/fs: omega = 2*pi*c*nu.
inline constexpr double rad_fs_per_cm1 = two_pi * speed_of_light_cm_fs;

// Boltzmann constant expressed in cm^-1 per kelvin: k_B / (h c).
inline constexpr double boltzmann_cm1_K =
    boltzmann_J_K / (planck_J_s * speed_of_light_m_s * 1e2);

}  // namespace qwit::constants
