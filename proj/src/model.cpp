#include "lowcarb/model.hpp"

#include <algorithm>
#include <cmath>

#include "lowcarb/csv.hpp"
#include "lowcarb/units.hpp"

namespace lowcarb {

std::string to_string(const Violation& v) { return v.field + " = " + v.value + " violates " + v.rule; }

SpecError::SpecError(Kind kind, std::string message, std::vector<Violation> violations)
    : Error(std::move(message)), kind_(kind), violations_(std::move(violations)) {}

void throw_violations(const std::string& context, std::vector<Violation> violations) {
  std::string message = context;
  if (!violations.empty()) message += ": " + to_string(violations.front());
  throw SpecError(SpecError::Kind::OutOfRange, std::move(message), std::move(violations));
}

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::N: return "N";
    case Orientation::S: return "S";
    case Orientation::E: return "E";
    case Orientation::W: return "W";
  }
  return "?";
}

std::optional<Orientation> parse_orientation(std::string_view text) {
  for (auto o : kOrientations) {
    if (to_string(o) == text) return o;
  }
  return std::nullopt;
}

std::string_view to_string(LightingTechnology t) {
  return t == LightingTechnology::Led ? "led" : "incandescent";
}

std::optional<LightingTechnology> parse_lighting_technology(std::string_view text) {
  if (text == "led") return LightingTechnology::Led;
  if (text == "incandescent") return LightingTechnology::Incandescent;
  return std::nullopt;
}

std::string_view to_string(HeatingFuel f) { return f == HeatingFuel::Electric ? "electric" : "gas"; }

std::optional<HeatingFuel> parse_heating_fuel(std::string_view text) {
  if (text == "gas") return HeatingFuel::Gas;
  if (text == "electric") return HeatingFuel::Electric;
  return std::nullopt;
}

double ClimateProfile::annual_cdd() const {
  double sum = 0.0;
  for (const auto& m : months) sum += m.cooling_degree_days;
  return sum;
}

double ClimateProfile::annual_hdd() const {
  double sum = 0.0;
  for (const auto& m : months) sum += m.heating_degree_days;
  return sum;
}

namespace {

template <typename T>
const T& find_by_id(const std::vector<T>& items, std::string_view id, std::string_view what) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& item) { return item.id == id; });
  if (it == items.end()) {
    throw SpecError(SpecError::Kind::Unknown, "unknown " + std::string(what) + " id '" + std::string(id) + "'");
  }
  return *it;
}

// Collects violations with uniform formatting. Comparisons are written so that
// NaN fails every rule.
class Checker {
 public:
  void positive(const std::string& field, double v) {
    if (!(v > 0.0)) add(field, v, "> 0");
  }
  void nonnegative(const std::string& field, double v) {
    if (!(v >= 0.0)) add(field, v, ">= 0");
  }
  void fraction(const std::string& field, double v) {
    if (!(v >= 0.0 && v <= 1.0)) add(field, v, "in [0, 1]");
  }
  void within(const std::string& field, double v, double lo, double hi, const std::string& rule) {
    if (!(v >= lo && v <= hi)) add(field, v, rule);
  }
  void add(const std::string& field, double v, std::string rule) {
    out.push_back({field, csv::format_double(v), std::move(rule)});
  }

  std::vector<Violation> out;
};

}  // namespace

const OpaqueConstruction& Catalog::wall(std::string_view id) const { return find_by_id(walls, id, "wall"); }
const OpaqueConstruction& Catalog::roof(std::string_view id) const { return find_by_id(roofs, id, "roof"); }
const GlazingOption& Catalog::glazing(std::string_view id) const { return find_by_id(glazings, id, "glazing"); }
const HvacSystem& Catalog::hvac_system(std::string_view id) const { return find_by_id(hvac, id, "hvac"); }

const LightingSystem& Catalog::lighting_system(LightingTechnology t) const {
  auto it = std::find_if(lighting.begin(), lighting.end(), [&](const auto& l) { return l.technology == t; });
  if (it == lighting.end()) {
    throw SpecError(SpecError::Kind::Unknown, "no lighting option for technology '" + std::string(to_string(t)) + "'");
  }
  return *it;
}

std::vector<Violation> validate_spec(const BuildingSpec& spec) {
  Checker c;
  c.positive("floor_area", spec.floor_area);
  c.positive("conditioned_volume", spec.conditioned_volume);
  if (spec.storeys < 1) c.add("storeys", spec.storeys, ">= 1");
  c.nonnegative("infiltration", spec.infiltration);
  c.within("occupancy_hours", spec.occupancy_hours, 0.0, units::kHoursPerYear, "in [0, 8760]");
  c.nonnegative("equipment_power_density", spec.equipment_power_density);

  for (auto o : kOrientations) {
    const auto& g = spec.group(o);
    const std::string prefix = "envelope." + std::string(to_string(o)) + ".";
    if (g.orientation != o) {
      c.out.push_back({prefix + "orientation", std::string(to_string(g.orientation)), "exactly one group per orientation"});
    }
    c.nonnegative(prefix + "gross_wall_area", g.gross_wall_area);
    c.fraction(prefix + "wwr", g.wwr);
    c.nonnegative(prefix + "overhang_ratio", g.overhang_ratio);
    c.positive(prefix + "wall.r_value", g.wall.r_value);
    c.positive(prefix + "glazing.u_value", g.glazing.u_value);
    c.fraction(prefix + "glazing.shgc", g.glazing.shgc);
    c.fraction(prefix + "glazing.visible_transmittance", g.glazing.visible_transmittance);
  }

  c.positive("roof.r_value", spec.roof.construction.r_value);
  c.nonnegative("roof.area", spec.roof.area);

  c.nonnegative("lighting.lamp_power", spec.lighting.lamp_power);
  if (spec.lighting.lamp_count < 0) c.add("lighting.lamp_count", static_cast<double>(spec.lighting.lamp_count), ">= 0");
  c.within("lighting.annual_hours", spec.lighting.annual_hours, 0.0, units::kHoursPerYear, "in [0, 8760]");
  c.fraction("lighting.daylight_offset", spec.lighting.daylight_offset);

  c.positive("hvac.cooling_cop", spec.hvac.cooling_cop);
  c.positive("hvac.heating_efficiency", spec.hvac.heating_efficiency);
  return c.out;
}

std::vector<Violation> validate_climate(const ClimateProfile& climate) {
  Checker c;
  double share_sum = 0.0;
  for (std::size_t i = 0; i < climate.months.size(); ++i) {
    const auto& m = climate.months[i];
    const std::string prefix = "month[" + std::to_string(i + 1) + "].";
    c.nonnegative(prefix + "cdd", m.cooling_degree_days);
    c.nonnegative(prefix + "hdd", m.heating_degree_days);
    c.fraction(prefix + "solar_share", m.solar_share);
    share_sum += m.solar_share;
  }
  if (!(std::abs(share_sum - 1.0) <= 1e-6)) c.add("solar_share", share_sum, "sums to 1");
  for (auto o : kOrientations) {
    c.nonnegative("irradiation_" + std::string(to_string(o)), climate.irradiation[index_of(o)]);
  }
  if (!(climate.summer_sun_altitude > 0.0 && climate.summer_sun_altitude < 90.0)) {
    c.add("summer_sun_altitude", climate.summer_sun_altitude, "in (0, 90)");
  }
  if (!(climate.winter_sun_altitude > 0.0 && climate.winter_sun_altitude < 90.0)) {
    c.add("winter_sun_altitude", climate.winter_sun_altitude, "in (0, 90)");
  }
  c.nonnegative("pv_full_sun_hours", climate.pv_full_sun_hours);
  return c.out;
}

std::vector<Violation> validate_tariff(const Tariff& tariff) {
  Checker c;
  c.positive("electricity_price", tariff.electricity_price);
  c.positive("gas_price", tariff.gas_price);
  c.positive("gas_energy_content", tariff.gas_energy_content);
  c.positive("feed_in_price", tariff.feed_in_price);
  return c.out;
}

std::vector<Violation> validate_fleet(const SensorFleet& fleet) {
  Checker c;
  for (std::size_t i = 0; i < fleet.entries.size(); ++i) {
    const auto& e = fleet.entries[i];
    const std::string prefix = "fleet[" + e.kind + "].";
    if (e.count < 0) c.add(prefix + "count", static_cast<double>(e.count), ">= 0");
    c.nonnegative(prefix + "unit_power", e.unit_power);
    c.fraction(prefix + "duty_cycle", e.duty_cycle);
  }
  return c.out;
}

double glazed_area(const BuildingSpec& spec, Orientation orientation) {
  const auto& g = spec.group(orientation);
  return g.gross_wall_area * g.wwr;
}

double opaque_wall_area(const BuildingSpec& spec, Orientation orientation) {
  const auto& g = spec.group(orientation);
  return g.gross_wall_area * (1.0 - g.wwr);
}

}  // namespace lowcarb
