#pragma once

// CODATA 2018 values, SI.
namespace ioncav::constants {

inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double boltzmann = 1.380649e-23;      // J/K
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double coulomb_constant = 8.9875517923e9;    // 1/(4 pi eps0), N m^2/C^2
inline constexpr double pi = 3.14159265358979323846;

} // namespace ioncav::constants
