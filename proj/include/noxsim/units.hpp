#pragma once

// Fixed conversion table applied when a scenario is read from disk. Everything
// past the loader is SI (m, s, ug/m^3) or dimensionless.

namespace noxsim::units {

inline constexpr double seconds_per_day = 86400.0;
inline constexpr double cm2_per_s_to_m2_per_s = 1.0e-4;

constexpr double diffusion_from_cm2_per_s(double d) { return d * cm2_per_s_to_m2_per_s; }
constexpr double diffusion_to_cm2_per_s(double d) { return d / cm2_per_s_to_m2_per_s; }

/// 1/(day UVI) -> 1/(s UVI)
constexpr double rate_from_per_day(double k) { return k / seconds_per_day; }
constexpr double rate_to_per_day(double k) { return k * seconds_per_day; }

}  // namespace noxsim::units
