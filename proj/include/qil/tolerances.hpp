#pragma once

namespace qil::tol {

inline constexpr double norm = 1e-9;
inline constexpr double trace = 1e-9;
inline constexpr double herm = 1e-9;
inline constexpr double unitary = 1e-9;
inline constexpr double psd = 1e-8;  // relative to matrix norm

}  // namespace qil::tol
