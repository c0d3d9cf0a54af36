#include "lowcarb/report.hpp"

#include <array>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "lowcarb/csv.hpp"
#include "lowcarb/units.hpp"

namespace lowcarb::report {

namespace {

struct Row {
  const char* name;
  double gj;
  std::string_view fuel;
};

std::array<Row, 4> rows(const EnergyReport& r) {
  return {{{"lighting", r.lighting, "electricity"},
           {"cooling", r.cooling, "electricity"},
           {"heating", r.heating, r.heating_fuel == HeatingFuel::Gas ? "gas" : "electricity"},
           {"equipment", r.equipment, "electricity"}}};
}

double share_pct(double part, double total) { return total > 0.0 ? 100.0 * part / total : 0.0; }

nlohmann::json breakdown(const LoadBreakdown& b) {
  return {{"conduction_kwh", b.conduction},
          {"infiltration_kwh", b.infiltration},
          {"solar_kwh", b.solar},
          {"internal_kwh", b.internal},
          {"load_kwh", b.load}};
}

}  // namespace

std::string audit_csv(const EnergyReport& report) {
  std::ostringstream out;
  out << "end_use,gj,kwh,share_pct,fuel\n";
  for (const auto& row : rows(report)) {
    out << row.name << ',' << csv::format_double(row.gj) << ',' << csv::format_double(units::gj_to_kwh(row.gj)) << ','
        << csv::format_double(share_pct(row.gj, report.total)) << ',' << row.fuel << '\n';
  }
  out << "total," << csv::format_double(report.total) << ',' << csv::format_double(units::gj_to_kwh(report.total))
      << ",100,\n";
  return out.str();
}

std::string audit_json(const EnergyReport& report, const BuildingSpec& spec, const CalibrationParams& calib,
                       const std::optional<Tariff>& tariff) {
  nlohmann::json uses = nlohmann::json::object();
  for (const auto& row : rows(report)) {
    uses[row.name] = {{"gj", row.gj}, {"share_pct", share_pct(row.gj, report.total)}, {"fuel", row.fuel}};
  }
  nlohmann::json j{{"building", spec.name},
                   {"floor_area_m2", spec.floor_area},
                   {"end_uses", uses},
                   {"total_gj", report.total},
                   {"eui_kwh_m2", eui(report, spec.floor_area)},
                   {"electricity_kwh", report.electricity_kwh},
                   {"gas_kwh", report.gas_kwh},
                   {"cooling_load", breakdown(report.cooling_load)},
                   {"heating_load", breakdown(report.heating_load)},
                   {"calibration",
                    {{"internal_gain_multiplier", calib.internal_gain_multiplier},
                     {"schedule_multiplier", calib.schedule_multiplier},
                     {"equipment_multiplier", calib.equipment_multiplier}}}};
  if (tariff) {
    j["gas_m3"] = gas_volume(report, *tariff);
    j["annual_cost_cny_m2"] = annual_cost(report, *tariff, spec.floor_area);
  }
  return j.dump(2) + "\n";
}

}  // namespace lowcarb::report
