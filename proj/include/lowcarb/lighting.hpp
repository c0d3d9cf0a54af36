#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lowcarb/model.hpp"

namespace lowcarb::lighting {

struct Room {
  std::string id;
  double floor_area = 0.0;         // m2
  double depth_from_window = 0.0;  // m, farthest point from the glazed wall
  double window_area = 0.0;        // m2
  double glazing_vt = 0.0;
  double target_illuminance = 0.0;  // lux
  double window_head_height = 2.4;  // m
  double ceiling_height = 3.0;      // m
  long count = 1;                   // identical rooms represented by this row
};

struct Lamp {
  std::string id;
  double luminous_flux = 0.0;  // lm
  double power = 0.0;          // W
  double utilization_factor = 1.0;
  double maintenance_factor = 1.0;
};

enum class DaylightClass { Sufficient, Insufficient };

std::string_view to_string(DaylightClass c);

std::vector<Violation> validate_room(const Room& room);
std::vector<Violation> validate_lamp(const Lamp& lamp);

// Total interior surface area of a rectangular room (floor, ceiling, walls).
double room_surface_area(const Room& room);

// Average daylight factor in percent: window_area * vt * 45 / surface area.
double average_daylight_factor(const Room& room);

// Sufficient iff the average daylight factor is at least 2 % and the room is no
// deeper than twice its window head height.
DaylightClass daylight_class(const Room& room);

// Lumen method: ceil(E * A / (flux * UF * MF)). Throws DomainError for zero
// flux or factors outside (0, 1].
long luminaire_count(const Room& room, const Lamp& lamp);

// count * power * hours * (1 - daylight_offset), in GJ/yr.
double annual_lighting_energy(long count, double lamp_power, double hours, double daylight_offset);

struct RoomResult {
  std::string id;
  long rooms = 1;
  long lamps_per_room = 0;
  long lamps = 0;  // lamps_per_room * rooms
  double watts = 0.0;
  double kwh = 0.0;
  DaylightClass daylight = DaylightClass::Insufficient;
  double daylight_factor = 0.0;
};

struct LightingPlan {
  std::vector<RoomResult> rooms;
  long total_lamps = 0;
  double total_watts = 0.0;
  double total_gj = 0.0;
};

// Sizes every room with one lamp type and annual operating hours.
LightingPlan plan_building(const std::vector<Room>& rooms, const Lamp& lamp, double annual_hours,
                           double daylight_offset = 0.0);

// Rooms CSV header: id,count,floor_area,depth_from_window,window_area,glazing_vt,
// target_illuminance[,window_head_height][,ceiling_height]
std::vector<Room> parse_rooms_csv(std::string_view text);

// Lamp CSV header: id,luminous_flux,power,utilization_factor,maintenance_factor
std::vector<Lamp> parse_lamps_csv(std::string_view text);

// Per-room report: id,rooms,daylight,daylight_factor_pct,lamps_per_room,lamps,watts,kwh
std::string plan_to_csv(const LightingPlan& plan);

}  // namespace lowcarb::lighting
