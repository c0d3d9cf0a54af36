#pragma once

#include <array>
#include <string>
#include <string_view>

#include "lowcarb/model.hpp"

namespace lowcarb {

// Seasonal thermal load split by mechanism, kWh of delivered heat.
struct LoadBreakdown {
  double conduction = 0.0;
  double infiltration = 0.0;
  double solar = 0.0;
  double internal = 0.0;
  double load = 0.0;  // net load after clamping (heating) or sum (cooling)
};

// Annual site energy by end use. Energy fields are GJ/yr; fuel fields kWh/yr.
struct EnergyReport {
  double lighting = 0.0;
  double cooling = 0.0;
  double heating = 0.0;
  double equipment = 0.0;
  double total = 0.0;

  double electricity_kwh = 0.0;
  double gas_kwh = 0.0;  // fuel energy; convert to volume with gas_volume()
  HeatingFuel heating_fuel = HeatingFuel::Gas;

  LoadBreakdown cooling_load;
  LoadBreakdown heating_load;

  // Delivered thermal energy (cooling + heating load), kWh/yr.
  double thermal_load_kwh() const { return cooling_load.load + heating_load.load; }

  bool operator==(const EnergyReport&) const = default;
};

// Transmitted direct-sun fraction below a horizontal overhang:
// 1 - min(1, ratio * tan(altitude)). Throws DomainError outside ratio >= 0,
// altitude in (0, 90) degrees.
double shading_factor(double overhang_ratio, double sun_altitude_deg);

// Monthly degree-day model. A month is a cooling month when its CDD is positive
// and at least its HDD, a heating month when its HDD is positive and larger;
// otherwise it contributes no HVAC load. Throws SpecError for an invalid spec
// or climate.
EnergyReport annual_end_use(const BuildingSpec& spec, const ClimateProfile& climate, const CalibrationParams& calib);

// kWh/(m2*yr). Throws DomainError when floor_area <= 0.
double eui(const EnergyReport& report, double floor_area);

// CNY/(m2*yr). Throws DomainError when floor_area <= 0.
double annual_cost(const EnergyReport& report, const Tariff& tariff, double floor_area);

// Gas consumption in m3 at the tariff's energy content.
double gas_volume(const EnergyReport& report, const Tariff& tariff);

struct CalibrationTargets {
  double lighting = 0.0;  // GJ/yr
  double cooling = 0.0;
  double heating = 0.0;
  double equipment = 0.0;

  double total() const { return lighting + cooling + heating + equipment; }
};

// Each end use may be given in GJ (`<use>_gj`) or as a share of `total_gj`
// (`<use>_share`). Throws SpecError on missing or non-positive values.
CalibrationTargets parse_targets_json(std::string_view text);

struct CalibrationOptions {
  double tolerance = 0.005;  // max relative residual per end use
  int max_sweeps = 500;
};

struct CalibrationResult {
  CalibrationParams params;
  std::array<double, 4> residuals{};  // lighting, cooling, heating, equipment (relative)
  double max_residual = 0.0;
  int sweeps = 0;
};

// Least-squares fit of the three multipliers to the four end-use targets by
// cyclic coordinate descent on relative residuals. Starts from all-ones and
// only accepts strict improvements, so targets equal to the uncalibrated
// output return the identity. Throws SpecError for non-positive targets and
// CalibrationError if the residual gate is missed.
CalibrationResult calibrate(const BuildingSpec& spec, const ClimateProfile& climate, const CalibrationTargets& targets,
                            const CalibrationOptions& options = {});

}  // namespace lowcarb
