#pragma once

namespace ssh {

// Atomic units throughout (hbar = 1, energies in hartree, lengths in bohr,
// masses in electron masses).
inline constexpr double k_boltzmann = 3.166811563e-6;  // hartree / kelvin
inline constexpr double au_time_fs = 0.02418884;       // 1 a.u. of time in fs

}  // namespace ssh
