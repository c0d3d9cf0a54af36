#include "lowcarb/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lowcarb/json_util.hpp"
#include "lowcarb/units.hpp"

namespace lowcarb {

double shading_factor(double overhang_ratio, double sun_altitude_deg) {
  if (!(overhang_ratio >= 0.0)) throw DomainError("shading_factor: overhang ratio must be >= 0");
  if (!(sun_altitude_deg > 0.0 && sun_altitude_deg < 90.0)) {
    throw DomainError("shading_factor: sun altitude must lie in (0, 90) degrees");
  }
  const double shaded = overhang_ratio * std::tan(sun_altitude_deg * std::numbers::pi / 180.0);
  return 1.0 - std::min(1.0, shaded);
}

namespace {

enum class Season { Cooling, Heating, Neutral };

Season season_of(const ClimateMonth& m) {
  if (m.cooling_degree_days > 0.0 && m.cooling_degree_days >= m.heating_degree_days) return Season::Cooling;
  if (m.heating_degree_days > 0.0) return Season::Heating;
  return Season::Neutral;
}

// Envelope conductance, W/K.
double envelope_ua(const BuildingSpec& spec) {
  double ua = spec.roof.area * spec.roof.construction.u_value();
  for (auto o : kOrientations) {
    const auto& g = spec.group(o);
    ua += opaque_wall_area(spec, o) * g.wall.u_value();
    ua += glazed_area(spec, o) * g.glazing.u_value;
  }
  return ua;
}

// Monthly solar gain through all glazing at a given sun altitude, kWh.
double solar_gain(const BuildingSpec& spec, const ClimateProfile& climate, double share, double altitude) {
  double gain = 0.0;
  for (auto o : kOrientations) {
    const auto& g = spec.group(o);
    gain += g.glazing.shgc * glazed_area(spec, o) * climate.irradiation[index_of(o)] * share *
            shading_factor(g.overhang_ratio, altitude);
  }
  return gain;
}

void require_valid(const BuildingSpec& spec, const ClimateProfile& climate) {
  if (auto v = validate_spec(spec); !v.empty()) {
    throw_violations("annual_end_use: invalid spec", std::move(v));
  }
  if (auto v = validate_climate(climate); !v.empty()) {
    throw_violations("annual_end_use: invalid climate", std::move(v));
  }
}

EnergyReport evaluate(const BuildingSpec& spec, const ClimateProfile& climate, const CalibrationParams& calib) {
  using units::kHoursPerDay;
  const double ua = envelope_ua(spec);
  const double air = units::kAirHeatCapacity * spec.infiltration * spec.conditioned_volume;

  const auto& lamps = spec.lighting;
  const double lighting_kwh =
      static_cast<double>(lamps.lamp_count) * lamps.lamp_power * lamps.annual_hours * (1.0 - lamps.daylight_offset) / 1000.0;
  const double equipment_kwh =
      spec.equipment_power_density * spec.floor_area * spec.occupancy_hours / 1000.0 * calib.equipment_multiplier;
  const double monthly_gains = (lighting_kwh + equipment_kwh) / 12.0;

  EnergyReport r;
  auto& cool = r.cooling_load;
  auto& heat = r.heating_load;
  for (const auto& m : climate.months) {
    switch (season_of(m)) {
      case Season::Cooling: {
        const double dd_hours = calib.schedule_multiplier * m.cooling_degree_days * kHoursPerDay / 1000.0;
        cool.conduction += ua * dd_hours;
        cool.infiltration += air * dd_hours;
        cool.solar += solar_gain(spec, climate, m.solar_share, climate.summer_sun_altitude);
        cool.internal += calib.internal_gain_multiplier * monthly_gains;
        break;
      }
      case Season::Heating: {
        const double dd_hours = calib.schedule_multiplier * m.heating_degree_days * kHoursPerDay / 1000.0;
        const double conduction = ua * dd_hours;
        const double infiltration = air * dd_hours;
        const double solar = solar_gain(spec, climate, m.solar_share, climate.winter_sun_altitude);
        heat.conduction += conduction;
        heat.infiltration += infiltration;
        heat.solar += solar;
        heat.internal += monthly_gains;
        heat.load += std::max(0.0, conduction + infiltration - solar - monthly_gains);
        break;
      }
      case Season::Neutral:
        break;
    }
  }
  cool.load = cool.conduction + cool.infiltration + cool.solar + cool.internal;

  const double cooling_kwh = cool.load / spec.hvac.cooling_cop;
  const double heating_kwh = heat.load / spec.hvac.heating_efficiency;

  r.lighting = units::kwh_to_gj(lighting_kwh);
  r.cooling = units::kwh_to_gj(cooling_kwh);
  r.heating = units::kwh_to_gj(heating_kwh);
  r.equipment = units::kwh_to_gj(equipment_kwh);
  r.total = r.lighting + r.cooling + r.heating + r.equipment;

  r.heating_fuel = spec.hvac.heating_fuel;
  r.electricity_kwh = lighting_kwh + equipment_kwh + cooling_kwh;
  if (spec.hvac.heating_fuel == HeatingFuel::Electric) {
    r.electricity_kwh += heating_kwh;
  } else {
    r.gas_kwh = heating_kwh;
  }
  return r;
}

}  // namespace

EnergyReport annual_end_use(const BuildingSpec& spec, const ClimateProfile& climate, const CalibrationParams& calib) {
  require_valid(spec, climate);
  if (!(calib.internal_gain_multiplier > 0 && calib.schedule_multiplier > 0 && calib.equipment_multiplier > 0)) {
    throw DomainError("annual_end_use: calibration multipliers must be > 0");
  }
  return evaluate(spec, climate, calib);
}

double eui(const EnergyReport& report, double floor_area) {
  if (!(floor_area > 0.0)) throw DomainError("eui: floor area must be > 0");
  return units::gj_to_kwh(report.total) / floor_area;
}

double gas_volume(const EnergyReport& report, const Tariff& tariff) {
  if (report.gas_kwh == 0.0) return 0.0;
  return report.gas_kwh / tariff.gas_energy_content;
}

double annual_cost(const EnergyReport& report, const Tariff& tariff, double floor_area) {
  if (!(floor_area > 0.0)) throw DomainError("annual_cost: floor area must be > 0");
  const double cost = report.electricity_kwh * tariff.electricity_price + gas_volume(report, tariff) * tariff.gas_price;
  return cost / floor_area;
}

CalibrationTargets parse_targets_json(std::string_view text) {
  using namespace json_util;
  const auto j = parse_json(text);
  const bool has_total = j.is_object() && j.contains("total_gj");
  const double total = has_total ? get_number(j, "total_gj", "") : 0.0;
  auto take = [&](const std::string& use) {
    double v = 0.0;
    if (j.contains(use + "_gj")) {
      v = get_number(j, use + "_gj", "");
    } else if (j.contains(use + "_share")) {
      if (!has_total) throw SpecError(SpecError::Kind::MissingField, use + "_share given without total_gj");
      v = get_number(j, use + "_share", "") * total;
    } else {
      throw SpecError(SpecError::Kind::MissingField, "missing target '" + use + "_gj' or '" + use + "_share'");
    }
    if (!(v > 0.0)) {
      throw SpecError(SpecError::Kind::OutOfRange, "target " + use + " must be > 0",
                      {{use, std::to_string(v), "> 0"}});
    }
    return v;
  };
  CalibrationTargets t;
  t.lighting = take("lighting");
  t.cooling = take("cooling");
  t.heating = take("heating");
  t.equipment = take("equipment");
  return t;
}

namespace {

struct Objective {
  const BuildingSpec& spec;
  const ClimateProfile& climate;
  std::array<double, 4> target;

  std::array<double, 4> residuals(const CalibrationParams& p) const {
    const auto r = evaluate(spec, climate, p);
    const std::array<double, 4> got{r.lighting, r.cooling, r.heating, r.equipment};
    std::array<double, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) out[i] = got[i] / target[i] - 1.0;
    return out;
  }

  double operator()(const CalibrationParams& p) const {
    double sum = 0.0;
    for (double e : residuals(p)) sum += e * e;
    return sum;
  }
};

double& coordinate(CalibrationParams& p, int k) {
  switch (k) {
    case 0: return p.equipment_multiplier;
    case 1: return p.schedule_multiplier;
    default: return p.internal_gain_multiplier;
  }
}

// One-dimensional minimization over a multiplier in log space: a coarse
// log-spaced scan picks the bracket, golden-section refines it.
double line_search(const Objective& f, CalibrationParams p, int k) {
  constexpr int kScan = 81;
  constexpr double kSpan = 4.0;  // +/- e^4 around the current value
  const double center = std::log(coordinate(p, k));
  auto eval = [&](double x) {
    coordinate(p, k) = std::exp(x);
    return f(p);
  };

  int best = 0;
  double best_val = INFINITY;
  std::array<double, kScan> xs{};
  for (int i = 0; i < kScan; ++i) {
    xs[i] = center - kSpan + 2.0 * kSpan * i / (kScan - 1);
    const double v = eval(xs[i]);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = xs[std::max(0, best - 1)];
  double hi = xs[std::min(kScan - 1, best + 1)];

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = eval(a);
  double fb = eval(b);
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = eval(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = eval(b);
    }
  }
  const double x = fa < fb ? a : b;
  return std::min({fa, fb}) < best_val ? std::exp(x) : std::exp(xs[best]);
}

}  // namespace

CalibrationResult calibrate(const BuildingSpec& spec, const ClimateProfile& climate, const CalibrationTargets& targets,
                            const CalibrationOptions& options) {
  const std::array<double, 4> target{targets.lighting, targets.cooling, targets.heating, targets.equipment};
  for (double t : target) {
    if (!(t > 0.0)) throw SpecError(SpecError::Kind::OutOfRange, "calibrate: targets must be > 0");
  }
  require_valid(spec, climate);

  const Objective f{spec, climate, target};
  CalibrationResult result;
  double current = f(result.params);

  for (int sweep = 0; sweep < options.max_sweeps && current > 1e-26; ++sweep) {
    const double before = current;
    for (int k = 0; k < 3; ++k) {
      CalibrationParams trial = result.params;
      coordinate(trial, k) = line_search(f, result.params, k);
      const double v = f(trial);
      if (v < current) {
        result.params = trial;
        current = v;
      }
    }
    result.sweeps = sweep + 1;
    if (!(current < before * (1.0 - 1e-12))) break;
  }

  result.residuals = f.residuals(result.params);
  for (double e : result.residuals) result.max_residual = std::max(result.max_residual, std::abs(e));
  if (result.max_residual > options.tolerance) {
    throw CalibrationError("calibrate: residual " + std::to_string(result.max_residual) + " exceeds tolerance " +
                               std::to_string(options.tolerance),
                           result.max_residual);
  }
  return result;
}

}  // namespace lowcarb
