#ifndef IONCHAIN_CONSTANTS_HPP
#define IONCHAIN_CONSTANTS_HPP

namespace ionchain {

/// Coulomb constant 1/(4 pi eps0), N m^2 / C^2 (CODATA 2018).
inline constexpr double k_coulomb = 8.9875517923e9;

/// Elementary charge, C.
inline constexpr double elementary_charge = 1.602176634e-19;

/// Mass of one 40Ca+ ion, kg (40 u).
inline constexpr double ca40_mass = 6.642e-26;

} // namespace ionchain

#endif
