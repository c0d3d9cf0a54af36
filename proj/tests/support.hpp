#pragma once

#include <filesystem>
#include <string>

#include "lowcarb/energy.hpp"
#include "lowcarb/model.hpp"
#include "lowcarb/model_io.hpp"

namespace lowcarb::test {

inline std::string fixture(const std::string& name) {
  return (std::filesystem::path(LOWCARB_DATA_DIR) / name).string();
}

inline std::string read_fixture(const std::string& name) { return read_text_file(fixture(name)); }

// Four 100 m2 facades at WWR 0.2, 100 m2 roof, 200 m2 floor.
inline BuildingSpec box_spec() {
  BuildingSpec s;
  s.name = "box";
  s.floor_area = 200.0;
  s.conditioned_volume = 1000.0;
  s.storeys = 2;
  for (auto o : kOrientations) {
    auto& g = s.group(o);
    g.orientation = o;
    g.gross_wall_area = 100.0;
    g.wwr = 0.2;
    g.wall = {"wall_r2", 2.0, 1.0};
    g.glazing = {"glz", 3.0, 0.5, 0.7, 1.0};
  }
  s.roof = {{"roof_r4", 4.0, 1.0}, 100.0};
  s.infiltration = 1.0;
  s.occupancy_hours = 2000.0;
  s.equipment_power_density = 5.0;
  s.lighting = {LightingTechnology::Led, 100.0, 10, 1000.0, 0.0};
  s.hvac = {"plant", 3.0, 0.8, HeatingFuel::Gas, 1.0};
  return s;
}

// January: 100 HDD with 5% of the sun. July: 50 CDD with 95%.
inline ClimateProfile box_climate() {
  ClimateProfile c;
  c.name = "two_month";
  for (auto& m : c.months) m = {0.0, 0.0, 0.0};
  c.months[0] = {0.0, 100.0, 0.05};
  c.months[6] = {50.0, 0.0, 0.95};
  c.irradiation = {400.0, 400.0, 400.0, 400.0};
  c.summer_sun_altitude = 80.0;
  c.winter_sun_altitude = 40.0;
  c.pv_full_sun_hours = 1000.0;
  return c;
}

struct Fixtures {
  SpecDocument baseline = parse_spec_document(read_fixture("baseline_school.json"));
  SpecDocument retrofit = parse_spec_document(read_fixture("retrofit_package.json"));
  ClimateProfile climate = parse_climate_csv(read_fixture("gd_climate.csv"));
  Catalog catalog = parse_catalog_csv(read_fixture("catalog.csv"));
  Tariff tariff = parse_tariff_json(read_fixture("tariff.json"));
};

}  // namespace lowcarb::test
