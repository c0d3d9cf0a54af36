#include "lowcarb/pv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "lowcarb/json_util.hpp"

namespace lowcarb::pv {

long panel_count(double roof_area, const PanelSpec& panel, double packing_factor) {
  if (!(packing_factor > 0.0 && packing_factor <= 1.0)) throw DomainError("panel_count: packing factor must lie in (0, 1]");
  if (!(panel.length > 0.0 && panel.width > 0.0 && panel.rated_power > 0.0)) {
    throw DomainError("panel_count: panel dimensions and rating must be > 0");
  }
  if (!(roof_area >= 0.0)) throw DomainError("panel_count: roof area must be >= 0");
  // The small epsilon keeps exact fits (700 * 0.8 / 1.6 = 350) from flooring to 349.
  const double fit = roof_area * packing_factor / (panel.length * panel.width);
  return static_cast<long>(std::floor(fit * (1.0 + 1e-12)));
}

double annual_generation(double capacity_kw, double equivalent_hours) {
  if (!(capacity_kw >= 0.0 && equivalent_hours >= 0.0)) throw DomainError("annual_generation: arguments must be >= 0");
  return capacity_kw * equivalent_hours;
}

PvEconomicsReport economics(double generation, double consumption, const Tariff& tariff, double capex_per_watt,
                            double capacity_kw) {
  if (!(generation >= 0.0 && consumption >= 0.0 && capex_per_watt >= 0.0 && capacity_kw >= 0.0)) {
    throw DomainError("economics: arguments must be >= 0");
  }
  if (auto v = validate_tariff(tariff); !v.empty()) {
    throw_violations("economics", std::move(v));
  }
  PvEconomicsReport r;
  r.capacity = capacity_kw;
  r.annual_generation = generation;
  r.consumption = consumption;
  r.self_consumed = std::min(generation, consumption);
  r.surplus = generation - r.self_consumed;
  r.bill_savings = r.self_consumed * tariff.electricity_price;
  r.feed_in_revenue = r.surplus * tariff.feed_in_price;
  r.total_benefit = r.bill_savings + r.feed_in_revenue;
  r.capex = capacity_kw * 1000.0 * capex_per_watt;
  r.payback = r.total_benefit > 0.0 ? r.capex / r.total_benefit : std::numeric_limits<double>::infinity();
  return r;
}

PvEconomicsReport evaluate(const RooftopSystem& system, double equivalent_hours, const Tariff& tariff) {
  const long n = panel_count(system.roof_area, system.panel, system.packing_factor);
  const double capacity = static_cast<double>(n) * system.panel.rated_power / 1000.0;
  auto r = economics(annual_generation(capacity, equivalent_hours), system.consumption, tariff, system.capex_per_watt,
                     capacity);
  r.panel_count = n;
  return r;
}

RooftopSystem parse_rooftop_json(std::string_view text) {
  using namespace json_util;
  const auto j = parse_json(text);
  RooftopSystem s;
  s.roof_area = get_number(j, "roof_area", "");
  const auto& panel = get_object(j, "panel", "");
  s.panel.length = get_number(panel, "length", "panel");
  s.panel.width = get_number(panel, "width", "panel");
  s.panel.rated_power = get_number(panel, "rated_power", "panel");
  s.packing_factor = get_number(j, "packing_factor", "");
  s.capex_per_watt = get_number(j, "capex_per_watt", "");
  s.consumption = get_number(j, "consumption_kwh", "");
  s.equivalent_hours = get_number_or(j, "equivalent_hours", "", -1.0);

  std::vector<Violation> v;
  auto check = [&](const char* field, double value, bool ok, const char* rule) {
    if (!ok) v.push_back({field, std::to_string(value), rule});
  };
  check("roof_area", s.roof_area, s.roof_area >= 0, ">= 0");
  check("panel.length", s.panel.length, s.panel.length > 0, "> 0");
  check("panel.width", s.panel.width, s.panel.width > 0, "> 0");
  check("panel.rated_power", s.panel.rated_power, s.panel.rated_power > 0, "> 0");
  check("packing_factor", s.packing_factor, s.packing_factor > 0 && s.packing_factor <= 1, "in (0, 1]");
  check("capex_per_watt", s.capex_per_watt, s.capex_per_watt >= 0, ">= 0");
  check("consumption_kwh", s.consumption, s.consumption >= 0, ">= 0");
  if (!v.empty()) throw_violations("rooftop", std::move(v));
  return s;
}

std::string report_to_json(const PvEconomicsReport& r) {
  nlohmann::json j{{"panel_count", r.panel_count},
                   {"capacity_kw", r.capacity},
                   {"annual_generation_kwh", r.annual_generation},
                   {"consumption_kwh", r.consumption},
                   {"self_consumed_kwh", r.self_consumed},
                   {"surplus_kwh", r.surplus},
                   {"bill_savings_cny", r.bill_savings},
                   {"feed_in_revenue_cny", r.feed_in_revenue},
                   {"total_benefit_cny", r.total_benefit},
                   {"capex_cny", r.capex}};
  // JSON has no infinity; an undefined payback is written as null.
  if (std::isfinite(r.payback)) {
    j["payback_years"] = r.payback;
  } else {
    j["payback_years"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string report_to_table(const PvEconomicsReport& r) {
  std::string out;
  auto row = [&](std::string_view label, std::string value) { out += fmt::format("{:<22}{:>16}\n", label, value); };
  row("panels", fmt::format("{}", r.panel_count));
  row("capacity (kW)", fmt::format("{:.2f}", r.capacity));
  row("generation (kWh/yr)", fmt::format("{:.0f}", r.annual_generation));
  row("consumption (kWh/yr)", fmt::format("{:.0f}", r.consumption));
  row("surplus (kWh/yr)", fmt::format("{:.0f}", r.surplus));
  row("bill savings (CNY/yr)", fmt::format("{:.2f}", r.bill_savings));
  row("feed-in (CNY/yr)", fmt::format("{:.2f}", r.feed_in_revenue));
  row("benefit (CNY/yr)", fmt::format("{:.2f}", r.total_benefit));
  row("capex (CNY)", fmt::format("{:.2f}", r.capex));
  row("payback (yr)", std::isfinite(r.payback) ? fmt::format("{:.2f}", r.payback) : std::string("never"));
  return out;
}

}  // namespace lowcarb::pv
