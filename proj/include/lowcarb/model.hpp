#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lowcarb/errors.hpp"

namespace lowcarb {

enum class Orientation { N, S, E, W };

inline constexpr std::array<Orientation, 4> kOrientations{Orientation::N, Orientation::S,
                                                          Orientation::E, Orientation::W};

std::string_view to_string(Orientation o);
std::optional<Orientation> parse_orientation(std::string_view text);
constexpr std::size_t index_of(Orientation o) { return static_cast<std::size_t>(o); }

// Per-orientation value table indexed by Orientation.
template <typename T>
using PerOrientation = std::array<T, 4>;

struct OpaqueConstruction {
  std::string id;
  double r_value = 0.0;  // (m2*K)/W
  double cost_index = 1.0;

  double u_value() const { return 1.0 / r_value; }
  bool operator==(const OpaqueConstruction&) const = default;
};

struct GlazingOption {
  std::string id;
  double u_value = 0.0;  // W/(m2*K)
  double shgc = 0.0;
  double visible_transmittance = 0.0;
  double cost_index = 1.0;

  bool operator==(const GlazingOption&) const = default;
};

struct EnvelopeGroup {
  Orientation orientation = Orientation::N;
  double gross_wall_area = 0.0;  // m2
  double wwr = 0.0;
  OpaqueConstruction wall;
  GlazingOption glazing;
  double overhang_ratio = 0.0;  // overhang depth / window height

  bool operator==(const EnvelopeGroup&) const = default;
};

struct Roof {
  OpaqueConstruction construction;
  double area = 0.0;  // m2

  bool operator==(const Roof&) const = default;
};

enum class LightingTechnology { Incandescent, Led };

std::string_view to_string(LightingTechnology t);
std::optional<LightingTechnology> parse_lighting_technology(std::string_view text);

struct LightingSystem {
  LightingTechnology technology = LightingTechnology::Incandescent;
  double lamp_power = 0.0;  // W
  long lamp_count = 0;
  double annual_hours = 0.0;     // h/yr
  double daylight_offset = 0.0;  // fraction of hours covered by daylight

  bool operator==(const LightingSystem&) const = default;
};

enum class HeatingFuel { Gas, Electric };

std::string_view to_string(HeatingFuel f);
std::optional<HeatingFuel> parse_heating_fuel(std::string_view text);

// HVAC plant reduced to seasonal conversion efficiencies.
struct HvacSystem {
  std::string id;
  double cooling_cop = 1.0;
  double heating_efficiency = 1.0;
  HeatingFuel heating_fuel = HeatingFuel::Gas;
  double cost_index = 1.0;

  bool operator==(const HvacSystem&) const = default;
};

// Multipliers that absorb what the steady-state surrogate does not model.
//   internal_gain_multiplier: scales internal gains in cooling months (latent, fan
//     and occupant heat ride along with the sensible equipment/lighting gains)
//   schedule_multiplier: scales the degree-day envelope terms (effective HVAC
//     operating schedule)
//   equipment_multiplier: scales plug-load energy
struct CalibrationParams {
  double internal_gain_multiplier = 1.0;
  double schedule_multiplier = 1.0;
  double equipment_multiplier = 1.0;

  bool operator==(const CalibrationParams&) const = default;
};

struct BuildingSpec {
  std::string name;
  double floor_area = 0.0;          // m2
  double conditioned_volume = 0.0;  // m3
  int storeys = 1;
  PerOrientation<EnvelopeGroup> envelope;
  Roof roof;
  double infiltration = 0.0;             // ACH
  double occupancy_hours = 2000.0;       // h/yr
  double equipment_power_density = 0.0;  // W/m2
  LightingSystem lighting;
  HvacSystem hvac;

  const EnvelopeGroup& group(Orientation o) const { return envelope[index_of(o)]; }
  EnvelopeGroup& group(Orientation o) { return envelope[index_of(o)]; }

  bool operator==(const BuildingSpec&) const = default;
};

struct ClimateMonth {
  double cooling_degree_days = 0.0;  // K*day, base 26 C
  double heating_degree_days = 0.0;  // K*day, base 18 C
  double solar_share = 1.0 / 12.0;   // fraction of annual irradiation falling in this month

  bool operator==(const ClimateMonth&) const = default;
};

struct ClimateProfile {
  std::string name;
  std::array<ClimateMonth, 12> months{};
  PerOrientation<double> irradiation{};  // kWh/m2/yr incident on vertical surfaces
  double summer_sun_altitude = 0.0;      // degrees
  double winter_sun_altitude = 0.0;      // degrees
  double pv_full_sun_hours = 0.0;        // h/yr

  double annual_cdd() const;
  double annual_hdd() const;

  bool operator==(const ClimateProfile&) const = default;
};

struct Tariff {
  double electricity_price = 0.0;   // CNY/kWh
  double gas_price = 0.0;           // CNY/m3
  double gas_energy_content = 0.0;  // kWh/m3
  double feed_in_price = 0.0;       // CNY/kWh

  bool operator==(const Tariff&) const = default;
};

struct SensorEntry {
  std::string kind;
  long count = 0;
  double unit_power = 0.0;  // W
  double duty_cycle = 0.0;

  bool operator==(const SensorEntry&) const = default;
};

struct SensorFleet {
  std::vector<SensorEntry> entries;

  bool operator==(const SensorFleet&) const = default;
};

// Construction and system options addressable by id.
struct Catalog {
  std::vector<OpaqueConstruction> walls;
  std::vector<OpaqueConstruction> roofs;
  std::vector<GlazingOption> glazings;
  std::vector<HvacSystem> hvac;
  std::vector<LightingSystem> lighting;

  const OpaqueConstruction& wall(std::string_view id) const;
  const OpaqueConstruction& roof(std::string_view id) const;
  const GlazingOption& glazing(std::string_view id) const;
  const HvacSystem& hvac_system(std::string_view id) const;
  const LightingSystem& lighting_system(LightingTechnology t) const;
};

std::vector<Violation> validate_spec(const BuildingSpec& spec);
std::vector<Violation> validate_climate(const ClimateProfile& climate);
std::vector<Violation> validate_tariff(const Tariff& tariff);
std::vector<Violation> validate_fleet(const SensorFleet& fleet);

// Glazed area of one facade: gross wall area times its window-to-wall ratio.
double glazed_area(const BuildingSpec& spec, Orientation orientation);

// Opaque (non-glazed) wall area of one facade.
double opaque_wall_area(const BuildingSpec& spec, Orientation orientation);

}  // namespace lowcarb
