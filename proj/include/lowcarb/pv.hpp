#pragma once

#include <string>
#include <string_view>

#include "lowcarb/model.hpp"

namespace lowcarb::pv {

struct PanelSpec {
  double length = 0.0;       // m
  double width = 0.0;        // m
  double rated_power = 0.0;  // W per module
};

struct PvEconomicsReport {
  long panel_count = 0;
  double capacity = 0.0;           // kW
  double annual_generation = 0.0;  // kWh/yr
  double consumption = 0.0;        // kWh/yr
  double self_consumed = 0.0;      // kWh/yr
  double surplus = 0.0;            // kWh/yr
  double bill_savings = 0.0;       // CNY/yr
  double feed_in_revenue = 0.0;    // CNY/yr
  double total_benefit = 0.0;      // CNY/yr
  double capex = 0.0;              // CNY
  double payback = 0.0;            // years; +inf when total_benefit is 0
};

// floor(roof_area * packing_factor / module footprint).
long panel_count(double roof_area, const PanelSpec& panel, double packing_factor);

// kWh/yr from capacity (kW) and equivalent full-sun hours.
double annual_generation(double capacity_kw, double equivalent_hours);

// Simple-payback economics: self-consumed energy offsets the bill at the retail
// price, surplus is exported at the feed-in price. No degradation or discounting.
PvEconomicsReport economics(double generation, double consumption, const Tariff& tariff, double capex_per_watt,
                            double capacity_kw);

// Rooftop system description read by the CLI.
struct RooftopSystem {
  double roof_area = 0.0;  // m2 available
  PanelSpec panel;
  double packing_factor = 1.0;
  double capex_per_watt = 0.0;     // CNY/W
  double consumption = 0.0;        // kWh/yr served behind the meter
  double equivalent_hours = -1.0;  // h/yr; negative means "take from climate"
};

// Lays out the roof, then runs generation and economics.
PvEconomicsReport evaluate(const RooftopSystem& system, double equivalent_hours, const Tariff& tariff);

RooftopSystem parse_rooftop_json(std::string_view text);
std::string report_to_json(const PvEconomicsReport& report);
std::string report_to_table(const PvEconomicsReport& report);

}  // namespace lowcarb::pv
