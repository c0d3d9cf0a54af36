#include "lowcarb/lighting.hpp"

#include <cmath>
#include <sstream>

#include "lowcarb/csv.hpp"
#include "lowcarb/units.hpp"

namespace lowcarb::lighting {

std::string_view to_string(DaylightClass c) {
  return c == DaylightClass::Sufficient ? "sufficient" : "insufficient";
}

std::vector<Violation> validate_room(const Room& room) {
  std::vector<Violation> out;
  auto bad = [&](const char* field, double v, const char* rule) {
    out.push_back({room.id + "." + field, csv::format_double(v), rule});
  };
  if (!(room.floor_area > 0)) bad("floor_area", room.floor_area, "> 0");
  if (!(room.target_illuminance >= 0)) bad("target_illuminance", room.target_illuminance, ">= 0");
  if (!(room.depth_from_window > 0)) bad("depth_from_window", room.depth_from_window, "> 0");
  if (!(room.window_area >= 0)) bad("window_area", room.window_area, ">= 0");
  if (!(room.glazing_vt >= 0 && room.glazing_vt <= 1)) bad("glazing_vt", room.glazing_vt, "in [0, 1]");
  if (!(room.window_head_height > 0)) bad("window_head_height", room.window_head_height, "> 0");
  if (!(room.ceiling_height > 0)) bad("ceiling_height", room.ceiling_height, "> 0");
  if (room.count < 0) bad("count", static_cast<double>(room.count), ">= 0");
  return out;
}

std::vector<Violation> validate_lamp(const Lamp& lamp) {
  std::vector<Violation> out;
  auto bad = [&](const char* field, double v, const char* rule) {
    out.push_back({lamp.id + "." + field, csv::format_double(v), rule});
  };
  if (!(lamp.luminous_flux >= 0)) bad("luminous_flux", lamp.luminous_flux, ">= 0");
  if (!(lamp.power >= 0)) bad("power", lamp.power, ">= 0");
  if (!(lamp.utilization_factor > 0 && lamp.utilization_factor <= 1)) bad("utilization_factor", lamp.utilization_factor, "in (0, 1]");
  if (!(lamp.maintenance_factor > 0 && lamp.maintenance_factor <= 1)) bad("maintenance_factor", lamp.maintenance_factor, "in (0, 1]");
  return out;
}

double room_surface_area(const Room& room) {
  const double width = room.floor_area / room.depth_from_window;
  return 2.0 * room.floor_area + 2.0 * (width + room.depth_from_window) * room.ceiling_height;
}

double average_daylight_factor(const Room& room) {
  return room.window_area * room.glazing_vt * 45.0 / room_surface_area(room);
}

DaylightClass daylight_class(const Room& room) {
  const bool bright = average_daylight_factor(room) >= 2.0;
  const bool shallow = room.depth_from_window <= 2.0 * room.window_head_height;
  return bright && shallow ? DaylightClass::Sufficient : DaylightClass::Insufficient;
}

long luminaire_count(const Room& room, const Lamp& lamp) {
  if (!(lamp.luminous_flux > 0)) throw DomainError("luminaire_count: lamp '" + lamp.id + "' has zero flux");
  if (auto v = validate_lamp(lamp); !v.empty()) throw DomainError("luminaire_count: " + to_string(v.front()));
  const double required = room.target_illuminance * room.floor_area;
  const double per_lamp = lamp.luminous_flux * lamp.utilization_factor * lamp.maintenance_factor;
  return static_cast<long>(std::ceil(required / per_lamp));
}

double annual_lighting_energy(long count, double lamp_power, double hours, double daylight_offset) {
  const double wh = static_cast<double>(count) * lamp_power * hours * (1.0 - daylight_offset);
  return units::kwh_to_gj(wh / 1000.0);
}

LightingPlan plan_building(const std::vector<Room>& rooms, const Lamp& lamp, double annual_hours, double daylight_offset) {
  LightingPlan plan;
  for (const auto& room : rooms) {
    RoomResult r;
    r.id = room.id;
    r.rooms = room.count;
    r.lamps_per_room = luminaire_count(room, lamp);
    r.lamps = r.lamps_per_room * room.count;
    r.watts = static_cast<double>(r.lamps) * lamp.power;
    r.kwh = units::gj_to_kwh(annual_lighting_energy(r.lamps, lamp.power, annual_hours, daylight_offset));
    r.daylight = daylight_class(room);
    r.daylight_factor = average_daylight_factor(room);
    plan.total_lamps += r.lamps;
    plan.total_watts += r.watts;
    plan.rooms.push_back(std::move(r));
  }
  plan.total_gj = annual_lighting_energy(plan.total_lamps, lamp.power, annual_hours, daylight_offset);
  return plan;
}

namespace {

[[noreturn]] void row_error(const csv::Row& row, const std::string& message) {
  throw SpecError(SpecError::Kind::Syntax, "line " + std::to_string(row.line) + ": " + message);
}

double number_at(const csv::Row& row, std::size_t col, const char* name) {
  if (col >= row.cells.size()) row_error(row, std::string("missing ") + name);
  auto v = csv::to_double(row.cells[col]);
  if (!v) row_error(row, std::string("bad number for ") + name);
  return *v;
}

}  // namespace

std::vector<Room> parse_rooms_csv(std::string_view text) {
  const auto rows = csv::read(text);
  if (rows.empty()) throw SpecError(SpecError::Kind::MissingField, "rooms: empty file");
  const csv::Header h(rows.front());
  const auto c_id = h.require("id");
  const auto c_count = h.find("count");
  const auto c_area = h.require("floor_area");
  const auto c_depth = h.require("depth_from_window");
  const auto c_win = h.require("window_area");
  const auto c_vt = h.require("glazing_vt");
  const auto c_lux = h.require("target_illuminance");
  const auto c_head = h.find("window_head_height");
  const auto c_ceiling = h.find("ceiling_height");

  std::vector<Room> rooms;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    Room r;
    r.id = c_id < row.cells.size() ? row.cells[c_id] : "";
    if (r.id.empty()) row_error(row, "missing id");
    if (c_count) {
      auto n = csv::to_long(*c_count < row.cells.size() ? row.cells[*c_count] : "");
      if (!n) row_error(row, "bad count");
      r.count = *n;
    }
    r.floor_area = number_at(row, c_area, "floor_area");
    r.depth_from_window = number_at(row, c_depth, "depth_from_window");
    r.window_area = number_at(row, c_win, "window_area");
    r.glazing_vt = number_at(row, c_vt, "glazing_vt");
    r.target_illuminance = number_at(row, c_lux, "target_illuminance");
    if (c_head && *c_head < row.cells.size() && !row.cells[*c_head].empty()) {
      r.window_head_height = number_at(row, *c_head, "window_head_height");
    }
    if (c_ceiling && *c_ceiling < row.cells.size() && !row.cells[*c_ceiling].empty()) {
      r.ceiling_height = number_at(row, *c_ceiling, "ceiling_height");
    }
    if (auto v = validate_room(r); !v.empty()) {
      throw_violations("rooms", std::move(v));
    }
    rooms.push_back(std::move(r));
  }
  return rooms;
}

std::vector<Lamp> parse_lamps_csv(std::string_view text) {
  const auto rows = csv::read(text);
  if (rows.empty()) throw SpecError(SpecError::Kind::MissingField, "lamps: empty file");
  const csv::Header h(rows.front());
  const auto c_id = h.require("id");
  const auto c_flux = h.require("luminous_flux");
  const auto c_power = h.require("power");
  const auto c_uf = h.require("utilization_factor");
  const auto c_mf = h.require("maintenance_factor");
  std::vector<Lamp> lamps;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    Lamp l;
    l.id = c_id < row.cells.size() ? row.cells[c_id] : "";
    if (l.id.empty()) row_error(row, "missing id");
    l.luminous_flux = number_at(row, c_flux, "luminous_flux");
    l.power = number_at(row, c_power, "power");
    l.utilization_factor = number_at(row, c_uf, "utilization_factor");
    l.maintenance_factor = number_at(row, c_mf, "maintenance_factor");
    if (auto v = validate_lamp(l); !v.empty()) {
      throw_violations("lamps", std::move(v));
    }
    lamps.push_back(std::move(l));
  }
  return lamps;
}

std::string plan_to_csv(const LightingPlan& plan) {
  std::ostringstream out;
  out << "id,rooms,daylight,daylight_factor_pct,lamps_per_room,lamps,watts,kwh\n";
  for (const auto& r : plan.rooms) {
    out << r.id << ',' << r.rooms << ',' << to_string(r.daylight) << ',' << csv::format_double(r.daylight_factor) << ','
        << r.lamps_per_room << ',' << r.lamps << ',' << csv::format_double(r.watts) << ',' << csv::format_double(r.kwh)
        << '\n';
  }
  out << "total,,,," << ',' << plan.total_lamps << ',' << csv::format_double(plan.total_watts) << ','
      << csv::format_double(units::gj_to_kwh(plan.total_gj)) << '\n';
  return out.str();
}

}  // namespace lowcarb::lighting
