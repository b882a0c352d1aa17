#pragma once

namespace srlab::constants {

// CODATA 2018 values; the single source of truth for every physical
// constant used in the code and in the acceptance tests.
inline constexpr const char* table_version = "CODATA-2018";

inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double mu_0 = 1.25663706212e-6;     // N A^-2
inline constexpr double mu_bohr = 9.2740100783e-24;  // J T^-1
inline constexpr double k_boltzmann = 1.380649e-23;  // J K^-1 (exact)
inline constexpr double mass_rb87 = 1.44316060e-25;  // kg (87Rb atomic mass)
inline constexpr double two_pi = 6.283185307179586476925286766559;

} // namespace srlab::constants
