#pragma once

#include <optional>
#include <string>

#include "lowcarb/energy.hpp"

namespace lowcarb::report {

// end_use,gj,kwh,share_pct,fuel rows plus a total row.
std::string audit_csv(const EnergyReport& report);

// Totals, shares, EUI, load breakdowns and, with a tariff, annual cost per m2.
std::string audit_json(const EnergyReport& report, const BuildingSpec& spec, const CalibrationParams& calib,
                       const std::optional<Tariff>& tariff);

}  // namespace lowcarb::report
