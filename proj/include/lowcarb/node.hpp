#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lowcarb/model.hpp"

namespace lowcarb::node {

struct SensorLoad {
  std::string name;
  double power = 0.0;  // W
  double duty_cycle = 1.0;
};

struct NodeConfig {
  double panel_rated_power = 0.0;    // W
  double panel_rated_voltage = 0.0;  // V
  double panel_rated_current = 0.0;  // A
  double battery_capacity = 0.0;     // Wh
  double charge_efficiency = 1.0;    // fraction of surplus that reaches the cell
  double controller_idle_power = 0.0;  // W
  std::vector<SensorLoad> sensor_loads;
  double rain_threshold = 0.0;  // sensor units
  double alarm_power = 0.0;     // W
  double hysteresis = 0.0;      // sensor units
};

enum class Alarm { Idle, Alarm };

std::string_view to_string(Alarm a);

struct NodeState {
  double soc = 1.0;
  Alarm alarm = Alarm::Idle;
  double harvest_power = 0.0;  // W
  double load_power = 0.0;     // W demanded
  double clock = 0.0;          // s
  bool served = true;          // full load delivered during the last step

  bool operator==(const NodeState&) const = default;
};

struct EnvSample {
  double timestamp = 0.0;  // s
  double irradiance_fraction = 0.0;
  double rain_reading = 0.0;
};

// Energy flows over one step or a whole run, Wh.
struct EnergyLedger {
  double harvested = 0.0;
  double demanded = 0.0;
  double served = 0.0;
  double unserved = 0.0;
  double curtailed = 0.0;
  double conversion_loss = 0.0;
  double delta_stored = 0.0;

  // harvested - (served + delta_stored + curtailed + conversion_loss)
  double closure_error() const { return harvested - (served + delta_stored + curtailed + conversion_loss); }
  EnergyLedger& operator+=(const EnergyLedger& other);
};

std::vector<Violation> validate_config(const NodeConfig& config);

// Battery capacity of a pack rated in mAh at a nominal voltage, Wh.
constexpr double pack_capacity_wh(double milliamp_hours, double volts) { return milliamp_hours / 1000.0 * volts; }

// Rising edge at reading >= threshold; falls back to idle only once the reading
// drops below threshold - hysteresis.
Alarm alarm_transition(Alarm current, double rain_reading, double threshold, double hysteresis);

struct StepResult {
  NodeState state;
  EnergyLedger ledger;
};

// Advances the node by dt seconds. The alarm is updated from the sample before
// the load is computed, so an alarm raised in this step draws power in it.
// When the battery is empty and harvest cannot cover the load, the node is
// off: nothing is served and the harvest charges the battery.
StepResult step_with_ledger(const NodeState& state, const NodeConfig& config, const EnvSample& env, double dt);
NodeState step(const NodeState& state, const NodeConfig& config, const EnvSample& env, double dt);

struct SimResult {
  std::vector<NodeState> states;
  double uptime_fraction = 0.0;
  EnergyLedger ledger;
  long served_steps = 0;
  // Seconds from the start until the first unserved step; total duration if
  // every step was served.
  double time_to_first_outage = 0.0;
};

// Folds step over the trace from `initial` (default: full battery, idle).
// Throws SpecError for an empty trace, non-increasing timestamps, or samples
// out of range; DomainError for dt <= 0.
SimResult simulate(const NodeConfig& config, const std::vector<EnvSample>& trace, double dt);
SimResult simulate_from(const NodeState& initial, const NodeConfig& config, const std::vector<EnvSample>& trace, double dt);

// Sum of count * unit_power * duty_cycle * 8760 h, in kWh/yr.
double fleet_annual_energy(const SensorFleet& fleet);

NodeConfig parse_config_json(std::string_view text);

// Trace CSV header: timestamp_s,irradiance_fraction,rain_reading
std::vector<EnvSample> parse_trace_csv(std::string_view text);

// State log: timestamp_s,soc,alarm,harvest_w,load_w,served
std::string states_to_csv(const SimResult& result);
std::string summary_to_json(const SimResult& result, double dt);

}  // namespace lowcarb::node
