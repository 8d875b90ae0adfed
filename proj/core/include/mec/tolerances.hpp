#pragma once

namespace mec {

/// Sum-to-one check for marginals and couplings.
inline constexpr double kEpsSum = 1e-9;
/// Reproduction of an input marginal by a coupling.
inline constexpr double kEpsMarg = 1e-9;
/// Residual masses below this are snapped to exactly zero.
inline constexpr double kEpsZero = 1e-12;
/// Residual of Gu = a and reconstruction error of certificate witnesses.
inline constexpr double kEpsCert = 1e-8;

}  // namespace mec
