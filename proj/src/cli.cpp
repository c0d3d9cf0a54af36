#include "lowcarb/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "lowcarb/energy.hpp"
#include "lowcarb/lighting.hpp"
#include "lowcarb/model_io.hpp"
#include "lowcarb/node.hpp"
#include "lowcarb/optimize.hpp"
#include "lowcarb/pv.hpp"
#include "lowcarb/report.hpp"
#include "lowcarb/units.hpp"

#ifndef LOWCARB_DATA_DIR
#define LOWCARB_DATA_DIR "data"
#endif
#ifndef LOWCARB_VERSION
#define LOWCARB_VERSION "0.0.0"
#endif

namespace lowcarb::cli {

namespace fs = std::filesystem;

std::filesystem::path data_dir() { return fs::path(LOWCARB_DATA_DIR); }

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256: digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string manifest_to_json(const RunManifest& m) {
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& in : m.inputs) inputs.push_back({{"role", in.role}, {"path", in.path}, {"sha256", in.sha256}});
  nlohmann::json j{{"command", m.command},         {"arguments", m.arguments},     {"inputs", inputs},
                   {"inputs_sha256", m.inputs_sha256}, {"output_dir", m.output_dir}, {"tool_version", m.tool_version},
                   {"created_utc", m.created_utc}};
  return j.dump(2) + "\n";
}

namespace {

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Flags {
  std::string spec, climate, catalog, space, tariff, trace, out, targets, calibration, rooms, lamps, fleet;
  std::size_t k = 10;
  double dt = 60.0;
  long seed = 0;
  unsigned threads = 0;
  double hours = 2000.0;
  double offset = 0.0;
};

// Reads inputs and remembers their digests for the manifest.
class Session {
 public:
  Session(std::string command, std::vector<std::string> args, fs::path out_dir)
      : out_dir_(std::move(out_dir)) {
    manifest_.command = std::move(command);
    manifest_.arguments = std::move(args);
    manifest_.output_dir = out_dir_.string();
    manifest_.tool_version = LOWCARB_VERSION;
  }

  std::string load(const std::string& role, const std::string& path) {
    auto text = read_text_file(path);
    manifest_.inputs.push_back({role, path, sha256_hex(text)});
    return text;
  }

  void write(const std::string& name, std::string_view content) {
    std::error_code ec;
    fs::create_directories(out_dir_, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir_.string() + ": " + ec.message());
    write_text_file(out_dir_ / name, content);
    written_.push_back(name);
  }

  void finish() {
    std::string joined;
    for (const auto& in : manifest_.inputs) joined += in.role + ":" + in.sha256 + "\n";
    manifest_.inputs_sha256 = sha256_hex(joined);
    manifest_.created_utc = utc_now();
    write("manifest.json", manifest_to_json(manifest_));
  }

  const fs::path& out_dir() const { return out_dir_; }

 private:
  fs::path out_dir_;
  RunManifest manifest_;
  std::vector<std::string> written_;
};

std::string or_default(const std::string& value, const char* fixture) {
  return value.empty() ? (data_dir() / fixture).string() : value;
}

std::string require_flag(const std::string& value, const char* flag) {
  if (value.empty()) throw CLI::RequiredError(std::string("--") + flag);
  return value;
}

std::string num(double v, int decimals) { return fmt::format("{:.{}f}", v, decimals); }

int cmd_audit(const Flags& f, Session& s, std::ostream& out) {
  const auto doc = parse_spec_document(s.load("spec", require_flag(f.spec, "spec")));
  const auto climate = parse_climate_csv(s.load("climate", or_default(f.climate, "gd_climate.csv")));
  const auto tariff = parse_tariff_json(s.load("tariff", or_default(f.tariff, "tariff.json")));
  const auto calib = f.calibration.empty() ? doc.calibration
                                           : parse_calibration_json(s.load("calibration", f.calibration));
  const auto r = annual_end_use(doc.building, climate, calib);
  s.write("audit.csv", report::audit_csv(r));
  s.write("audit.json", report::audit_json(r, doc.building, calib, tariff));
  s.finish();
  out << doc.building.name << ": total " << num(r.total, 2) << " GJ/yr, EUI " << num(eui(r, doc.building.floor_area), 2)
      << " kWh/m2/yr, cost " << num(annual_cost(r, tariff, doc.building.floor_area), 2) << " CNY/m2/yr\n";
  return kExitOk;
}

int cmd_optimize(const Flags& f, Session& s, std::ostream& out) {
  const auto doc = parse_spec_document(s.load("spec", require_flag(f.spec, "spec")));
  const auto space_text = s.load("space", require_flag(f.space, "space"));
  const auto climate = parse_climate_csv(s.load("climate", or_default(f.climate, "gd_climate.csv")));
  const auto catalog = parse_catalog_csv(s.load("catalog", or_default(f.catalog, "catalog.csv")));
  const auto space = opt::parse_design_space(space_text, doc.building);
  const auto limits = opt::parse_code_limits(space_text);
  opt::OptimizeOptions options;
  options.threads = f.threads;
  const auto result = opt::optimize(doc.building, climate, doc.calibration, catalog, space, limits, f.k, options);
  s.write("optimize.csv", opt::results_to_csv(result));
  s.write("optimize.json", opt::results_to_json(result));
  s.finish();
  const auto& best = result.top.front();
  out << "evaluated " << result.evaluated << " designs, " << result.feasible << " code-legal; best EUI "
      << num(best.eui, 2) << " kWh/m2/yr (design " << best.design.index << ")\n";
  return kExitOk;
}

int cmd_pv(const Flags& f, Session& s, std::ostream& out) {
  const auto system = pv::parse_rooftop_json(s.load("spec", or_default(f.spec, "pv_rooftop.json")));
  const auto tariff = parse_tariff_json(s.load("tariff", or_default(f.tariff, "tariff.json")));
  double hours = system.equivalent_hours;
  if (hours < 0) hours = parse_climate_csv(s.load("climate", or_default(f.climate, "gd_climate.csv"))).pv_full_sun_hours;
  const auto r = pv::evaluate(system, hours, tariff);
  s.write("pv.json", pv::report_to_json(r));
  std::ostringstream csv;
  csv << "metric,value\n";
  const auto fields = nlohmann::json::parse(pv::report_to_json(r));
  for (const auto& [key, value] : fields.items()) csv << key << ',' << value.dump() << '\n';
  s.write("pv.csv", csv.str());
  s.finish();
  out << pv::report_to_table(r);
  return kExitOk;
}

int cmd_node_sim(const Flags& f, Session& s, std::ostream& out) {
  const auto config = node::parse_config_json(s.load("spec", or_default(f.spec, "node_demo.json")));
  const auto trace = node::parse_trace_csv(s.load("trace", or_default(f.trace, "node_demo_trace.csv")));
  const auto result = node::simulate(config, trace, f.dt);
  s.write("node_states.csv", node::states_to_csv(result));
  s.write("node_summary.json", node::summary_to_json(result, f.dt));
  s.finish();
  out << "steps " << result.states.size() << ", uptime " << num(100.0 * result.uptime_fraction, 2) << "%, final soc "
      << num(result.states.back().soc, 4) << "\n";
  return kExitOk;
}

int cmd_calibrate(const Flags& f, Session& s, std::ostream& out) {
  auto doc = parse_spec_document(s.load("spec", require_flag(f.spec, "spec")));
  const auto climate = parse_climate_csv(s.load("climate", or_default(f.climate, "gd_climate.csv")));
  const auto targets = parse_targets_json(s.load("targets", or_default(f.targets, "baseline_targets.json")));
  const auto result = calibrate(doc.building, climate, targets);
  nlohmann::json j = nlohmann::json::parse(serialize_calibration_json(result.params));
  j["residuals"] = {{"lighting", result.residuals[0]},
                    {"cooling", result.residuals[1]},
                    {"heating", result.residuals[2]},
                    {"equipment", result.residuals[3]}};
  j["max_residual"] = result.max_residual;
  j["sweeps"] = result.sweeps;
  s.write("calibration.json", j.dump(2) + "\n");
  doc.calibration = result.params;
  s.write("calibrated_spec.json", serialize_spec_document(doc));
  s.finish();
  out << "calibrated in " << result.sweeps << " sweeps, max residual " << fmt::format("{:.3g}", result.max_residual)
      << "\n";
  return kExitOk;
}

int cmd_lighting(const Flags& f, Session& s, std::ostream& out) {
  const auto rooms = lighting::parse_rooms_csv(s.load("rooms", or_default(f.rooms, "rooms.csv")));
  const auto lamps = lighting::parse_lamps_csv(s.load("lamps", or_default(f.lamps, "lamps.csv")));
  if (lamps.empty()) throw SpecError(SpecError::Kind::MissingField, "lamps: no lamp rows");
  const auto plan = lighting::plan_building(rooms, lamps.front(), f.hours, f.offset);
  s.write("lighting.csv", lighting::plan_to_csv(plan));
  s.finish();
  out << plan.total_lamps << " luminaires, " << num(plan.total_gj, 2) << " GJ/yr\n";
  return kExitOk;
}

int cmd_fleet(const Flags& f, Session& s, std::ostream& out) {
  const auto fleet = parse_fleet_csv(s.load("fleet", or_default(f.fleet, "sensor_fleet.csv")));
  const auto tariff = parse_tariff_json(s.load("tariff", or_default(f.tariff, "tariff.json")));
  const double kwh = node::fleet_annual_energy(fleet);
  const double cost = kwh * tariff.electricity_price;
  nlohmann::json j{{"annual_energy_kwh", kwh}, {"annual_cost_cny", cost}};
  s.write("fleet.json", j.dump(2) + "\n");
  s.finish();
  out << "sensor fleet: " << num(kwh, 2) << " kWh/yr, " << num(cost, 2) << " CNY/yr\n";
  return kExitOk;
}

void print_violations(const std::vector<Violation>& violations, std::ostream& err) {
  for (const auto& v : violations) err << "  " << to_string(v) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lowcarb: building energy audit and retrofit toolkit", "lowcarb"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LOWCARB_VERSION);
  Flags f;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", f.out, "Output directory (default: $LOWCARB_OUT or ./lowcarb-out)");
    sub->add_option("--seed", f.seed, "Reserved; the engine is deterministic");
  };
  auto add_climate = [&](CLI::App* sub) { sub->add_option("--climate", f.climate, "Climate CSV"); };

  auto* audit = app.add_subcommand("audit", "Annual end-use energy of a building spec");
  audit->add_option("--spec", f.spec, "Building spec JSON");
  add_climate(audit);
  audit->add_option("--tariff", f.tariff, "Tariff JSON");
  audit->add_option("--calibration", f.calibration, "Calibration JSON overriding the spec's block");
  add_out(audit);

  auto* optimize = app.add_subcommand("optimize", "Exhaustive retrofit grid search ranked by EUI");
  optimize->add_option("--spec", f.spec, "Base building spec JSON");
  optimize->add_option("--space", f.space, "Design space JSON");
  add_climate(optimize);
  optimize->add_option("--catalog", f.catalog, "Construction catalog CSV");
  optimize->add_option("--k", f.k, "Designs to report")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 40));
  optimize->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
  add_out(optimize);

  auto* pv = app.add_subcommand("pv", "Rooftop PV layout and payback");
  pv->add_option("--spec", f.spec, "Rooftop system JSON");
  pv->add_option("--tariff", f.tariff, "Tariff JSON");
  add_climate(pv);
  add_out(pv);

  auto* node = app.add_subcommand("node-sim", "Replay an environment trace through the monitoring node");
  node->add_option("--spec", f.spec, "Node config JSON");
  node->add_option("--trace", f.trace, "Environment trace CSV");
  node->add_option("--dt", f.dt, "Step length, s")->check(CLI::PositiveNumber);
  add_out(node);

  auto* calib = app.add_subcommand("calibrate", "Fit calibration multipliers to end-use targets");
  calib->add_option("--spec", f.spec, "Building spec JSON");
  add_climate(calib);
  calib->add_option("--targets", f.targets, "Target end uses JSON");
  add_out(calib);

  auto* light = app.add_subcommand("lighting", "Lumen-method luminaire plan");
  light->add_option("--rooms", f.rooms, "Rooms CSV");
  light->add_option("--lamps", f.lamps, "Lamps CSV (first row is used)");
  light->add_option("--hours", f.hours, "Annual operating hours")->check(CLI::NonNegativeNumber);
  light->add_option("--offset", f.offset, "Daylight offset fraction")->check(CLI::Range(0.0, 1.0));
  add_out(light);

  auto* fleet = app.add_subcommand("fleet", "Annual energy and cost of a sensor fleet");
  fleet->add_option("--fleet", f.fleet, "Sensor fleet CSV");
  fleet->add_option("--tariff", f.tariff, "Tariff JSON");
  add_out(fleet);

  const std::vector<std::pair<CLI::App*, std::function<int(const Flags&, Session&, std::ostream&)>>> commands{
      {audit, cmd_audit},       {optimize, cmd_optimize}, {pv, cmd_pv},       {node, cmd_node_sim},
      {calib, cmd_calibrate},   {light, cmd_lighting},    {fleet, cmd_fleet}};

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << LOWCARB_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string out_dir = f.out;
  if (out_dir.empty()) {
    const char* env = std::getenv("LOWCARB_OUT");
    out_dir = env && *env ? env : "lowcarb-out";
  }

  try {
    for (const auto& [sub, handler] : commands) {
      if (!sub->parsed()) continue;
      Session session(sub->get_name(), args, out_dir);
      return handler(f, session, out);
    }
    err << "usage error: no subcommand\n";
    return kExitUsage;
  } catch (const CLI::RequiredError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const SpecError& e) {
    err << "invalid input: " << e.what() << "\n";
    print_violations(e.violations(), err);
    return kExitDomain;
  } catch (const CalibrationError& e) {
    err << "calibration failed: " << e.what() << " (best residual " << e.best_residual() << ")\n";
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace lowcarb::cli
