#include "lowcarb/model_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "lowcarb/csv.hpp"
#include "lowcarb/json_util.hpp"

namespace lowcarb {

using nlohmann::json;
using namespace json_util;

namespace {

OpaqueConstruction construction_from_json(const json& j, const std::string& path) {
  OpaqueConstruction c;
  c.id = get_string(j, "id", path);
  c.r_value = get_number(j, "r_value", path);
  c.cost_index = get_number_or(j, "cost_index", path, 1.0);
  return c;
}

json construction_to_json(const OpaqueConstruction& c) {
  return json{{"id", c.id}, {"r_value", c.r_value}, {"cost_index", c.cost_index}};
}

GlazingOption glazing_from_json(const json& j, const std::string& path) {
  GlazingOption g;
  g.id = get_string(j, "id", path);
  g.u_value = get_number(j, "u_value", path);
  g.shgc = get_number(j, "shgc", path);
  g.visible_transmittance = get_number(j, "visible_transmittance", path);
  g.cost_index = get_number_or(j, "cost_index", path, 1.0);
  return g;
}

json glazing_to_json(const GlazingOption& g) {
  return json{{"id", g.id},
              {"u_value", g.u_value},
              {"shgc", g.shgc},
              {"visible_transmittance", g.visible_transmittance},
              {"cost_index", g.cost_index}};
}

BuildingSpec building_from_json(const json& doc) {
  if (!doc.is_object()) throw SpecError(SpecError::Kind::Syntax, "spec document must be a JSON object");
  const auto version = static_cast<int>(get_number(doc, "schema_version", ""));
  if (version != kSpecSchemaVersion) {
    throw SpecError(SpecError::Kind::OutOfRange, "unsupported schema_version " + std::to_string(version));
  }

  BuildingSpec spec;
  spec.name = get_string(doc, "name", "");
  spec.floor_area = get_number(doc, "floor_area", "");
  spec.conditioned_volume = get_number(doc, "conditioned_volume", "");
  spec.storeys = static_cast<int>(get_integer(doc, "storeys", ""));
  spec.infiltration = get_number(doc, "infiltration_ach", "");
  spec.occupancy_hours = get_number_or(doc, "occupancy_hours", "", 2000.0);
  spec.equipment_power_density = get_number(doc, "equipment_power_density", "");

  const auto& env = get_array(doc, "envelope", "");
  PerOrientation<bool> seen{};
  for (std::size_t i = 0; i < env.size(); ++i) {
    const auto path = "envelope[" + std::to_string(i) + "]";
    const auto& g = env[i];
    const auto orient_text = get_string(g, "orientation", path);
    const auto orient = parse_orientation(orient_text);
    if (!orient) {
      throw SpecError(SpecError::Kind::OutOfRange, path + ".orientation: unknown orientation '" + orient_text + "'",
                      {{path + ".orientation", orient_text, "one of N, S, E, W"}});
    }
    if (seen[index_of(*orient)]) {
      throw SpecError(SpecError::Kind::OutOfRange, path + ": duplicate orientation " + orient_text,
                      {{path + ".orientation", orient_text, "exactly one group per orientation"}});
    }
    seen[index_of(*orient)] = true;
    EnvelopeGroup& group = spec.group(*orient);
    group.orientation = *orient;
    group.gross_wall_area = get_number(g, "gross_wall_area", path);
    group.wwr = get_number(g, "wwr", path);
    group.overhang_ratio = get_number_or(g, "overhang_ratio", path, 0.0);
    group.wall = construction_from_json(get_object(g, "wall", path), path + ".wall");
    group.glazing = glazing_from_json(get_object(g, "glazing", path), path + ".glazing");
  }
  for (auto o : kOrientations) {
    if (!seen[index_of(o)]) {
      throw SpecError(SpecError::Kind::MissingField, "envelope: missing orientation " + std::string(to_string(o)));
    }
  }

  const auto& roof = get_object(doc, "roof", "");
  spec.roof.construction = construction_from_json(get_object(roof, "construction", "roof"), "roof.construction");
  spec.roof.area = get_number(roof, "area", "roof");

  const auto& lighting = get_object(doc, "lighting", "");
  const auto tech_text = get_string(lighting, "technology", "lighting");
  const auto tech = parse_lighting_technology(tech_text);
  if (!tech) {
    throw SpecError(SpecError::Kind::Unknown, "lighting.technology: unknown value '" + tech_text + "'",
                    {{"lighting.technology", tech_text, "one of incandescent, led"}});
  }
  spec.lighting.technology = *tech;
  spec.lighting.lamp_power = get_number(lighting, "lamp_power", "lighting");
  spec.lighting.lamp_count = get_integer(lighting, "lamp_count", "lighting");
  spec.lighting.annual_hours = get_number_or(lighting, "annual_hours", "lighting", spec.occupancy_hours);
  spec.lighting.daylight_offset = get_number_or(lighting, "daylight_offset", "lighting", 0.0);

  const auto& hvac = get_object(doc, "hvac", "");
  spec.hvac.id = get_string(hvac, "id", "hvac");
  spec.hvac.cooling_cop = get_number(hvac, "cooling_cop", "hvac");
  spec.hvac.heating_efficiency = get_number(hvac, "heating_efficiency", "hvac");
  const auto fuel_text = get_string(hvac, "heating_fuel", "hvac");
  const auto fuel = parse_heating_fuel(fuel_text);
  if (!fuel) {
    throw SpecError(SpecError::Kind::Unknown, "hvac.heating_fuel: unknown value '" + fuel_text + "'",
                    {{"hvac.heating_fuel", fuel_text, "one of gas, electric"}});
  }
  spec.hvac.heating_fuel = *fuel;
  spec.hvac.cost_index = get_number_or(hvac, "cost_index", "hvac", 1.0);

  if (auto violations = validate_spec(spec); !violations.empty()) {
    throw_violations("building spec", std::move(violations));
  }
  return spec;
}

json building_to_json(const BuildingSpec& spec) {
  json env = json::array();
  for (auto o : kOrientations) {
    const auto& g = spec.group(o);
    env.push_back(json{{"orientation", std::string(to_string(o))},
                       {"gross_wall_area", g.gross_wall_area},
                       {"wwr", g.wwr},
                       {"overhang_ratio", g.overhang_ratio},
                       {"wall", construction_to_json(g.wall)},
                       {"glazing", glazing_to_json(g.glazing)}});
  }
  return json{
      {"schema_version", kSpecSchemaVersion},
      {"name", spec.name},
      {"floor_area", spec.floor_area},
      {"conditioned_volume", spec.conditioned_volume},
      {"storeys", spec.storeys},
      {"infiltration_ach", spec.infiltration},
      {"occupancy_hours", spec.occupancy_hours},
      {"equipment_power_density", spec.equipment_power_density},
      {"envelope", env},
      {"roof", json{{"construction", construction_to_json(spec.roof.construction)}, {"area", spec.roof.area}}},
      {"lighting", json{{"technology", std::string(to_string(spec.lighting.technology))},
                        {"lamp_power", spec.lighting.lamp_power},
                        {"lamp_count", spec.lighting.lamp_count},
                        {"annual_hours", spec.lighting.annual_hours},
                        {"daylight_offset", spec.lighting.daylight_offset}}},
      {"hvac", json{{"id", spec.hvac.id},
                    {"cooling_cop", spec.hvac.cooling_cop},
                    {"heating_efficiency", spec.hvac.heating_efficiency},
                    {"heating_fuel", std::string(to_string(spec.hvac.heating_fuel))},
                    {"cost_index", spec.hvac.cost_index}}},
  };
}

CalibrationParams calibration_from_json(const json& j, const std::string& path) {
  CalibrationParams p;
  p.internal_gain_multiplier = get_number(j, "internal_gain_multiplier", path);
  p.schedule_multiplier = get_number(j, "schedule_multiplier", path);
  p.equipment_multiplier = get_number(j, "equipment_multiplier", path);
  if (!(p.internal_gain_multiplier > 0 && p.schedule_multiplier > 0 && p.equipment_multiplier > 0)) {
    throw SpecError(SpecError::Kind::OutOfRange, "calibration multipliers must be > 0");
  }
  return p;
}

json calibration_to_json(const CalibrationParams& p) {
  return json{{"internal_gain_multiplier", p.internal_gain_multiplier},
              {"schedule_multiplier", p.schedule_multiplier},
              {"equipment_multiplier", p.equipment_multiplier}};
}

[[noreturn]] void csv_error(const csv::Row& row, const std::string& message) {
  throw SpecError(SpecError::Kind::Syntax, "line " + std::to_string(row.line) + ": " + message);
}

double cell_number(const csv::Row& row, std::size_t col, std::string_view name) {
  if (col >= row.cells.size()) csv_error(row, "missing value for '" + std::string(name) + "'");
  auto v = csv::to_double(row.cells[col]);
  if (!v) csv_error(row, "'" + row.cells[col] + "' is not a number (" + std::string(name) + ")");
  return *v;
}

long cell_integer(const csv::Row& row, std::size_t col, std::string_view name) {
  if (col >= row.cells.size()) csv_error(row, "missing value for '" + std::string(name) + "'");
  auto v = csv::to_long(row.cells[col]);
  if (!v) csv_error(row, "'" + row.cells[col] + "' is not an integer (" + std::string(name) + ")");
  return *v;
}

std::string cell_text(const csv::Row& row, std::size_t col, std::string_view name) {
  if (col >= row.cells.size() || row.cells[col].empty()) {
    csv_error(row, "missing value for '" + std::string(name) + "'");
  }
  return row.cells[col];
}

}  // namespace

BuildingSpec parse_building_spec(std::string_view text) { return building_from_json(parse_json(text)); }

SpecDocument parse_spec_document(std::string_view text) {
  const auto doc = parse_json(text);
  SpecDocument out{building_from_json(doc), {}};
  if (doc.contains("calibration")) out.calibration = calibration_from_json(doc.at("calibration"), "calibration");
  return out;
}

std::string serialize_building_spec(const BuildingSpec& spec) { return building_to_json(spec).dump(2) + "\n"; }

std::string serialize_spec_document(const SpecDocument& doc) {
  auto j = building_to_json(doc.building);
  j["calibration"] = calibration_to_json(doc.calibration);
  return j.dump(2) + "\n";
}

ClimateProfile parse_climate_csv(std::string_view text) {
  const auto rows = csv::read(text);
  ClimateProfile climate;
  std::map<std::string, double> header;
  std::size_t i = 0;
  for (; i < rows.size() && rows[i].cells.front() != "month"; ++i) {
    const auto& row = rows[i];
    if (row.cells.size() != 2) csv_error(row, "expected 'key,value' in header block");
    if (row.cells[0] == "name") {
      climate.name = row.cells[1];
      continue;
    }
    header[row.cells[0]] = cell_number(row, 1, row.cells[0]);
  }
  if (i == rows.size()) throw SpecError(SpecError::Kind::MissingField, "climate: missing month table");

  auto take = [&](const std::string& key) {
    auto it = header.find(key);
    if (it == header.end()) throw SpecError(SpecError::Kind::MissingField, "climate: missing header '" + key + "'");
    const double v = it->second;
    header.erase(it);
    return v;
  };
  for (auto o : kOrientations) climate.irradiation[index_of(o)] = take("irradiation_" + std::string(to_string(o)));
  climate.summer_sun_altitude = take("summer_sun_altitude");
  climate.winter_sun_altitude = take("winter_sun_altitude");
  climate.pv_full_sun_hours = take("pv_full_sun_hours");
  if (!header.empty()) throw SpecError(SpecError::Kind::Syntax, "climate: unknown header '" + header.begin()->first + "'");

  const csv::Header columns(rows[i]);
  const auto c_month = columns.require("month");
  const auto c_cdd = columns.require("cdd");
  const auto c_hdd = columns.require("hdd");
  const auto c_share = columns.find("solar_share");
  ++i;
  if (rows.size() - i != 12) {
    throw SpecError(SpecError::Kind::Syntax, "climate: expected 12 month rows, found " + std::to_string(rows.size() - i));
  }
  for (std::size_t m = 0; m < 12; ++m, ++i) {
    const auto& row = rows[i];
    if (cell_integer(row, c_month, "month") != static_cast<long>(m + 1)) csv_error(row, "months must run 1..12 in order");
    climate.months[m].cooling_degree_days = cell_number(row, c_cdd, "cdd");
    climate.months[m].heating_degree_days = cell_number(row, c_hdd, "hdd");
    climate.months[m].solar_share = c_share ? cell_number(row, *c_share, "solar_share") : 1.0 / 12.0;
  }

  if (auto v = validate_climate(climate); !v.empty()) {
    throw_violations("climate", std::move(v));
  }
  return climate;
}

Catalog parse_catalog_csv(std::string_view text) {
  const auto rows = csv::read(text);
  if (rows.empty()) throw SpecError(SpecError::Kind::MissingField, "catalog: empty file");
  const csv::Header h(rows.front());
  const auto c_kind = h.require("kind");
  const auto c_id = h.require("id");
  const auto c_cost = h.require("cost_index");

  Catalog catalog;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const auto kind = cell_text(row, c_kind, "kind");
    const auto id = cell_text(row, c_id, "id");
    const double cost = cell_number(row, c_cost, "cost_index");
    auto number = [&](std::string_view col) { return cell_number(row, h.require(col), col); };
    if (kind == "wall" || kind == "roof") {
      OpaqueConstruction c{id, number("r_value"), cost};
      if (!(c.r_value > 0)) csv_error(row, "r_value must be > 0");
      (kind == "wall" ? catalog.walls : catalog.roofs).push_back(std::move(c));
    } else if (kind == "glazing") {
      GlazingOption g{id, number("u_value"), number("shgc"), number("vt"), cost};
      if (!(g.u_value > 0) || !(g.shgc >= 0 && g.shgc <= 1) || !(g.visible_transmittance >= 0 && g.visible_transmittance <= 1)) {
        csv_error(row, "glazing coefficients out of range");
      }
      catalog.glazings.push_back(std::move(g));
    } else if (kind == "hvac") {
      HvacSystem s;
      s.id = id;
      s.cooling_cop = number("cooling_cop");
      s.heating_efficiency = number("heating_efficiency");
      const auto fuel = parse_heating_fuel(cell_text(row, h.require("heating_fuel"), "heating_fuel"));
      if (!fuel) csv_error(row, "heating_fuel must be gas or electric");
      s.heating_fuel = *fuel;
      s.cost_index = cost;
      if (!(s.cooling_cop > 0) || !(s.heating_efficiency > 0)) csv_error(row, "efficiencies must be > 0");
      catalog.hvac.push_back(std::move(s));
    } else if (kind == "lighting") {
      const auto tech = parse_lighting_technology(id);
      if (!tech) csv_error(row, "lighting id must be a technology (incandescent, led)");
      LightingSystem l;
      l.technology = *tech;
      l.lamp_power = number("lamp_power");
      l.lamp_count = cell_integer(row, h.require("lamp_count"), "lamp_count");
      l.annual_hours = number("annual_hours");
      l.daylight_offset = number("daylight_offset");
      if (!(l.lamp_power >= 0) || l.lamp_count < 0 || !(l.daylight_offset >= 0 && l.daylight_offset <= 1)) {
        csv_error(row, "lighting values out of range");
      }
      catalog.lighting.push_back(l);
    } else {
      csv_error(row, "unknown kind '" + kind + "'");
    }
  }
  return catalog;
}

Tariff parse_tariff_json(std::string_view text) {
  const auto j = parse_json(text);
  Tariff t;
  t.electricity_price = get_number(j, "electricity_price", "");
  t.gas_price = get_number(j, "gas_price", "");
  t.gas_energy_content = get_number(j, "gas_energy_content", "");
  t.feed_in_price = get_number(j, "feed_in_price", "");
  if (auto v = validate_tariff(t); !v.empty()) {
    throw_violations("tariff", std::move(v));
  }
  return t;
}

std::string serialize_tariff_json(const Tariff& t) {
  return json{{"electricity_price", t.electricity_price},
              {"gas_price", t.gas_price},
              {"gas_energy_content", t.gas_energy_content},
              {"feed_in_price", t.feed_in_price}}
             .dump(2) +
         "\n";
}

SensorFleet parse_fleet_csv(std::string_view text) {
  const auto rows = csv::read(text);
  if (rows.empty()) throw SpecError(SpecError::Kind::MissingField, "fleet: empty file");
  const csv::Header h(rows.front());
  const auto c_kind = h.require("kind");
  const auto c_count = h.require("count");
  const auto c_power = h.require("unit_power");
  const auto c_duty = h.require("duty_cycle");
  SensorFleet fleet;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    fleet.entries.push_back({cell_text(row, c_kind, "kind"), cell_integer(row, c_count, "count"),
                             cell_number(row, c_power, "unit_power"), cell_number(row, c_duty, "duty_cycle")});
  }
  if (auto v = validate_fleet(fleet); !v.empty()) {
    throw_violations("fleet", std::move(v));
  }
  return fleet;
}

CalibrationParams parse_calibration_json(std::string_view text) {
  return calibration_from_json(parse_json(text), "");
}

std::string serialize_calibration_json(const CalibrationParams& params) {
  return calibration_to_json(params).dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace lowcarb
