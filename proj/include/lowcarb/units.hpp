#pragma once

namespace lowcarb::units {

inline constexpr double kMegajoulePerKwh = 3.6;
inline constexpr double kKwhPerGigajoule = 1000.0 / kMegajoulePerKwh;
inline constexpr double kHoursPerYear = 8760.0;
inline constexpr double kSecondsPerHour = 3600.0;
inline constexpr double kHoursPerDay = 24.0;

// Volumetric heat capacity of air, Wh/(m3*K).
inline constexpr double kAirHeatCapacity = 0.335;

constexpr double gj_to_kwh(double gj) { return gj * kKwhPerGigajoule; }
constexpr double kwh_to_gj(double kwh) { return kwh * kMegajoulePerKwh / 1000.0; }

}  // namespace lowcarb::units
