#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lowcarb/model.hpp"

namespace lowcarb {

inline constexpr int kSpecSchemaVersion = 1;

// A building spec file: the building plus the calibration multipliers it was
// tuned with (all 1.0 when the file carries no `calibration` block).
struct SpecDocument {
  BuildingSpec building;
  CalibrationParams calibration;
};

// Parses a JSON building spec. Throws SpecError on syntax errors (with byte
// position), missing required fields, or any validate_spec violation.
BuildingSpec parse_building_spec(std::string_view text);
SpecDocument parse_spec_document(std::string_view text);

std::string serialize_building_spec(const BuildingSpec& spec);
std::string serialize_spec_document(const SpecDocument& doc);

// Climate file: `key,value` header lines, then a `month,cdd,hdd[,solar_share]`
// table with exactly twelve rows. Lines starting with '#' are comments.
ClimateProfile parse_climate_csv(std::string_view text);

// Catalog file: CSV with header
//   kind,id,r_value,u_value,shgc,vt,cost_index,cooling_cop,heating_efficiency,
//   heating_fuel,lamp_power,lamp_count,annual_hours,daylight_offset
// where kind is one of wall, roof, glazing, hvac, lighting. Cells that do not
// apply to a kind are left empty.
Catalog parse_catalog_csv(std::string_view text);

Tariff parse_tariff_json(std::string_view text);
std::string serialize_tariff_json(const Tariff& tariff);

// Sensor fleet: CSV with header kind,count,unit_power,duty_cycle.
SensorFleet parse_fleet_csv(std::string_view text);

CalibrationParams parse_calibration_json(std::string_view text);
std::string serialize_calibration_json(const CalibrationParams& params);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace lowcarb
