#include "lowcarb/node.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lowcarb/csv.hpp"
#include "lowcarb/json_util.hpp"
#include "lowcarb/units.hpp"

namespace lowcarb::node {

std::string_view to_string(Alarm a) { return a == Alarm::Alarm ? "alarm" : "idle"; }

EnergyLedger& EnergyLedger::operator+=(const EnergyLedger& o) {
  harvested += o.harvested;
  demanded += o.demanded;
  served += o.served;
  unserved += o.unserved;
  curtailed += o.curtailed;
  conversion_loss += o.conversion_loss;
  delta_stored += o.delta_stored;
  return *this;
}

std::vector<Violation> validate_config(const NodeConfig& c) {
  std::vector<Violation> out;
  auto bad = [&](std::string field, double v, std::string rule) {
    out.push_back({std::move(field), csv::format_double(v), std::move(rule)});
  };
  if (!(c.panel_rated_power >= 0)) bad("panel_rated_power", c.panel_rated_power, ">= 0");
  const double vi = c.panel_rated_voltage * c.panel_rated_current;
  if (!(std::abs(c.panel_rated_power - vi) <= 0.05 * c.panel_rated_power)) {
    bad("panel_rated_power", c.panel_rated_power, "within 5% of rated voltage x current");
  }
  if (!(c.battery_capacity > 0)) bad("battery_capacity", c.battery_capacity, "> 0");
  if (!(c.charge_efficiency > 0 && c.charge_efficiency <= 1)) bad("charge_efficiency", c.charge_efficiency, "in (0, 1]");
  if (!(c.controller_idle_power >= 0)) bad("controller_idle_power", c.controller_idle_power, ">= 0");
  for (const auto& s : c.sensor_loads) {
    if (!(s.power >= 0)) bad("sensor_loads." + s.name + ".power", s.power, ">= 0");
    if (!(s.duty_cycle >= 0 && s.duty_cycle <= 1)) bad("sensor_loads." + s.name + ".duty_cycle", s.duty_cycle, "in [0, 1]");
  }
  if (!(c.rain_threshold >= 0)) bad("rain_threshold", c.rain_threshold, ">= 0");
  if (!(c.alarm_power >= 0)) bad("alarm_power", c.alarm_power, ">= 0");
  if (!(c.hysteresis >= 0)) bad("hysteresis", c.hysteresis, ">= 0");
  return out;
}

Alarm alarm_transition(Alarm current, double rain_reading, double threshold, double hysteresis) {
  if (current == Alarm::Idle) return rain_reading >= threshold ? Alarm::Alarm : Alarm::Idle;
  return rain_reading < threshold - hysteresis ? Alarm::Idle : Alarm::Alarm;
}

namespace {

double demand_power(const NodeConfig& c, Alarm alarm) {
  double p = c.controller_idle_power;
  for (const auto& s : c.sensor_loads) p += s.power * s.duty_cycle;
  if (alarm == Alarm::Alarm) p += c.alarm_power;
  return p;
}

// Pushes surplus energy into the battery; fills charged/curtailed/loss.
void charge(EnergyLedger& l, double surplus, double stored, const NodeConfig& c) {
  const double headroom = c.battery_capacity - stored;
  const double accepted = std::min(surplus, std::max(0.0, headroom) / c.charge_efficiency);
  l.delta_stored = accepted * c.charge_efficiency;
  l.conversion_loss = accepted - l.delta_stored;
  l.curtailed = surplus - accepted;
}

}  // namespace

StepResult step_with_ledger(const NodeState& state, const NodeConfig& config, const EnvSample& env, double dt) {
  if (!(dt > 0.0)) throw DomainError("step: dt must be > 0");
  if (!(env.irradiance_fraction >= 0.0 && env.irradiance_fraction <= 1.0)) {
    throw DomainError("step: irradiance fraction must lie in [0, 1]");
  }

  StepResult out;
  NodeState& next = out.state;
  EnergyLedger& l = out.ledger;

  next.alarm = alarm_transition(state.alarm, env.rain_reading, config.rain_threshold, config.hysteresis);
  next.harvest_power = config.panel_rated_power * env.irradiance_fraction;
  next.load_power = demand_power(config, next.alarm);
  next.clock = env.timestamp + dt;

  const double hours = dt / units::kSecondsPerHour;
  const double stored = std::clamp(state.soc, 0.0, 1.0) * config.battery_capacity;
  l.harvested = next.harvest_power * hours;
  l.demanded = next.load_power * hours;

  if (stored <= 0.0 && l.harvested < l.demanded) {
    // Brown-out: the node is off and whatever is harvested charges the cell.
    l.unserved = l.demanded;
    charge(l, l.harvested, stored, config);
  } else if (l.harvested >= l.demanded) {
    l.served = l.demanded;
    charge(l, l.harvested - l.demanded, stored, config);
  } else {
    const double deficit = l.demanded - l.harvested;
    const double drawn = std::min(deficit, stored);
    l.served = l.harvested + drawn;
    l.unserved = deficit - drawn;
    l.delta_stored = -drawn;
  }

  next.served = l.unserved == 0.0;
  next.soc = std::clamp((stored + l.delta_stored) / config.battery_capacity, 0.0, 1.0);
  return out;
}

NodeState step(const NodeState& state, const NodeConfig& config, const EnvSample& env, double dt) {
  return step_with_ledger(state, config, env, dt).state;
}

SimResult simulate_from(const NodeState& initial, const NodeConfig& config, const std::vector<EnvSample>& trace,
                        double dt) {
  if (!(dt > 0.0)) throw DomainError("simulate: dt must be > 0");
  if (trace.empty()) throw SpecError(SpecError::Kind::MissingField, "simulate: trace is empty");
  if (auto v = validate_config(config); !v.empty()) {
    throw_violations("node config", std::move(v));
  }
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& s = trace[i];
    if (i > 0 && !(s.timestamp > trace[i - 1].timestamp)) {
      throw SpecError(SpecError::Kind::OutOfRange, "simulate: timestamps must be strictly increasing (sample " +
                                                       std::to_string(i) + ")");
    }
    if (!(s.irradiance_fraction >= 0.0 && s.irradiance_fraction <= 1.0) || !(s.rain_reading >= 0.0)) {
      throw SpecError(SpecError::Kind::OutOfRange, "simulate: sample " + std::to_string(i) + " out of range");
    }
  }

  SimResult result;
  result.states.reserve(trace.size());
  NodeState state = initial;
  bool outage = false;
  for (const auto& sample : trace) {
    auto [next, ledger] = step_with_ledger(state, config, sample, dt);
    result.ledger += ledger;
    if (next.served) {
      ++result.served_steps;
      if (!outage) result.time_to_first_outage += dt;
    } else {
      outage = true;
    }
    state = next;
    result.states.push_back(next);
  }
  result.uptime_fraction = static_cast<double>(result.served_steps) / static_cast<double>(trace.size());
  return result;
}

SimResult simulate(const NodeConfig& config, const std::vector<EnvSample>& trace, double dt) {
  return simulate_from(NodeState{}, config, trace, dt);
}

double fleet_annual_energy(const SensorFleet& fleet) {
  if (auto v = validate_fleet(fleet); !v.empty()) {
    throw_violations("fleet", std::move(v));
  }
  double watts = 0.0;
  for (const auto& e : fleet.entries) watts += static_cast<double>(e.count) * e.unit_power * e.duty_cycle;
  return watts * units::kHoursPerYear / 1000.0;
}

NodeConfig parse_config_json(std::string_view text) {
  using namespace json_util;
  const auto j = parse_json(text);
  NodeConfig c;
  const auto& panel = get_object(j, "panel", "");
  c.panel_rated_power = get_number(panel, "rated_power", "panel");
  c.panel_rated_voltage = get_number(panel, "rated_voltage", "panel");
  c.panel_rated_current = get_number(panel, "rated_current", "panel");
  const auto& battery = get_object(j, "battery", "");
  if (battery.contains("capacity_wh")) {
    c.battery_capacity = get_number(battery, "capacity_wh", "battery");
  } else {
    c.battery_capacity =
        pack_capacity_wh(get_number(battery, "capacity_mah", "battery"), get_number(battery, "voltage", "battery"));
  }
  c.charge_efficiency = get_number_or(battery, "charge_efficiency", "battery", 1.0);
  c.controller_idle_power = get_number(j, "controller_idle_power", "");
  for (const auto& s : get_array(j, "sensor_loads", "")) {
    c.sensor_loads.push_back({get_string(s, "name", "sensor_loads"), get_number(s, "power", "sensor_loads"),
                              get_number_or(s, "duty_cycle", "sensor_loads", 1.0)});
  }
  c.rain_threshold = get_number(j, "rain_threshold", "");
  c.alarm_power = get_number(j, "alarm_power", "");
  c.hysteresis = get_number_or(j, "hysteresis", "", 0.0);
  if (auto v = validate_config(c); !v.empty()) {
    throw_violations("node config", std::move(v));
  }
  return c;
}

std::vector<EnvSample> parse_trace_csv(std::string_view text) {
  const auto rows = csv::read(text);
  if (rows.empty()) throw SpecError(SpecError::Kind::MissingField, "trace: empty file");
  const csv::Header h(rows.front());
  const auto c_t = h.require("timestamp_s");
  const auto c_irr = h.require("irradiance_fraction");
  const auto c_rain = h.require("rain_reading");
  std::vector<EnvSample> trace;
  trace.reserve(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    auto cell = [&](std::size_t c) {
      std::optional<double> v;
      if (c < row.cells.size()) v = csv::to_double(row.cells[c]);
      if (!v) throw SpecError(SpecError::Kind::Syntax, "trace line " + std::to_string(row.line) + ": bad number");
      return *v;
    };
    trace.push_back({cell(c_t), cell(c_irr), cell(c_rain)});
  }
  if (trace.empty()) throw SpecError(SpecError::Kind::MissingField, "trace: no samples");
  return trace;
}

std::string states_to_csv(const SimResult& result) {
  std::ostringstream out;
  out << "timestamp_s,soc,alarm,harvest_w,load_w,served\n";
  for (const auto& s : result.states) {
    out << csv::format_double(s.clock) << ',' << csv::format_double(s.soc) << ',' << to_string(s.alarm) << ','
        << csv::format_double(s.harvest_power) << ',' << csv::format_double(s.load_power) << ',' << (s.served ? 1 : 0)
        << '\n';
  }
  return out.str();
}

std::string summary_to_json(const SimResult& r, double dt) {
  long alarm_steps = 0;
  for (const auto& s : r.states) alarm_steps += s.alarm == Alarm::Alarm ? 1 : 0;
  nlohmann::json j{{"steps", r.states.size()},
                   {"dt_s", dt},
                   {"served_steps", r.served_steps},
                   {"uptime_fraction", r.uptime_fraction},
                   {"time_to_first_outage_h", r.time_to_first_outage / units::kSecondsPerHour},
                   {"alarm_steps", alarm_steps},
                   {"final_soc", r.states.empty() ? 1.0 : r.states.back().soc},
                   {"ledger_wh",
                    {{"harvested", r.ledger.harvested},
                     {"demanded", r.ledger.demanded},
                     {"served", r.ledger.served},
                     {"unserved", r.ledger.unserved},
                     {"curtailed", r.ledger.curtailed},
                     {"conversion_loss", r.ledger.conversion_loss},
                     {"delta_stored", r.ledger.delta_stored},
                     {"closure_error", r.ledger.closure_error()}}}};
  return j.dump(2) + "\n";
}

}  // namespace lowcarb::node
