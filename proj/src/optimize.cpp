#include "lowcarb/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "lowcarb/csv.hpp"
#include "lowcarb/json_util.hpp"

namespace lowcarb::opt {

namespace {

// Radix of each variable in declared order.
std::array<std::size_t, 14> radices(const DesignSpace& s) {
  std::array<std::size_t, 14> r{};
  for (std::size_t i = 0; i < 4; ++i) {
    r[i] = s.wwr[i].size();
    r[4 + i] = s.overhang_ratio[i].size();
  }
  r[8] = s.glazing_ids.size();
  r[9] = s.wall_ids.size();
  r[10] = s.roof_ids.size();
  r[11] = s.infiltration.size();
  r[12] = s.lighting.size();
  r[13] = s.hvac_ids.size();
  return r;
}

constexpr std::array<const char*, 14> kVariableNames{"wwr.N",      "wwr.S",      "wwr.E",      "wwr.W",   "overhang.N",
                                                     "overhang.S", "overhang.E", "overhang.W", "glazing", "wall",
                                                     "roof",       "infiltration", "lighting", "hvac"};

}  // namespace

DesignSpace space_from_spec(const BuildingSpec& spec) {
  DesignSpace s;
  for (auto o : kOrientations) {
    s.wwr[index_of(o)] = {spec.group(o).wwr};
    s.overhang_ratio[index_of(o)] = {spec.group(o).overhang_ratio};
  }
  // Glazing and wall ids come from the south facade; the engine allows them to
  // differ per facade but the grid treats them as building-wide.
  s.glazing_ids = {spec.group(Orientation::S).glazing.id};
  s.wall_ids = {spec.group(Orientation::S).wall.id};
  s.roof_ids = {spec.roof.construction.id};
  s.infiltration = {spec.infiltration};
  s.lighting = {spec.lighting.technology};
  s.hvac_ids = {spec.hvac.id};
  return s;
}

std::size_t space_size(const DesignSpace& space, std::size_t cap) {
  std::size_t n = 1;
  const auto r = radices(space);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == 0) throw SpecError(SpecError::Kind::MissingField, std::string("design space: empty list for ") + kVariableNames[i]);
  }
  for (auto len : r) {
    if (n > cap / len) {
      throw DomainError("design space exceeds the size cap of " + std::to_string(cap) + " designs");
    }
    n *= len;
  }
  if (n > cap) throw DomainError("design space exceeds the size cap of " + std::to_string(cap) + " designs");
  return n;
}

DesignVariables design_at(const DesignSpace& space, std::size_t index) {
  const auto r = radices(space);
  std::array<std::size_t, 14> digit{};
  std::size_t rest = index;
  for (std::size_t i = r.size(); i-- > 0;) {
    digit[i] = rest % r[i];
    rest /= r[i];
  }
  if (rest != 0) throw DomainError("design_at: index " + std::to_string(index) + " out of range");

  DesignVariables d;
  for (std::size_t i = 0; i < 4; ++i) {
    d.wwr[i] = space.wwr[i][digit[i]];
    d.overhang_ratio[i] = space.overhang_ratio[i][digit[4 + i]];
  }
  d.glazing_id = space.glazing_ids[digit[8]];
  d.wall_id = space.wall_ids[digit[9]];
  d.roof_id = space.roof_ids[digit[10]];
  d.infiltration = space.infiltration[digit[11]];
  d.lighting_technology = space.lighting[digit[12]];
  d.hvac_id = space.hvac_ids[digit[13]];
  d.index = index;
  return d;
}

std::vector<DesignVariables> enumerate(const DesignSpace& space, std::size_t cap) {
  const std::size_t n = space_size(space, cap);
  std::vector<DesignVariables> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(design_at(space, i));
  return out;
}

std::vector<Violation> validate_limits(const CodeLimits& limits) {
  std::vector<Violation> out;
  for (auto o : kOrientations) {
    const auto name = std::string(to_string(o));
    const auto& w = limits.max_wwr[index_of(o)];
    if (!(w.value > 0 && w.value <= 1)) out.push_back({"max_wwr." + name, csv::format_double(w.value), "in (0, 1]"});
    const auto& h = limits.overhang[index_of(o)];
    if (!(h.min >= 0 && h.min <= h.max && h.max <= 1)) {
      out.push_back({"overhang." + name, csv::format_double(h.min) + ".." + csv::format_double(h.max),
                     "0 <= min <= max <= 1"});
    }
  }
  return out;
}

std::vector<Violation> code_check(const DesignVariables& design, const CodeLimits& limits) {
  std::vector<Violation> out;
  for (auto o : kOrientations) {
    const auto i = index_of(o);
    const auto name = std::string(to_string(o));
    const auto& w = limits.max_wwr[i];
    const double wwr = design.wwr[i];
    const bool ok = w.strict ? wwr < w.value : wwr <= w.value;
    if (!ok) {
      out.push_back({"wwr." + name, csv::format_double(wwr), (w.strict ? "< " : "<= ") + csv::format_double(w.value)});
    }
    const auto& h = limits.overhang[i];
    const double r = design.overhang_ratio[i];
    if (!(r >= h.min && r <= h.max)) {
      out.push_back({"overhang." + name, csv::format_double(r),
                     "in [" + csv::format_double(h.min) + ", " + csv::format_double(h.max) + "]"});
    }
  }
  return out;
}

BuildingSpec apply_design(const BuildingSpec& base, const DesignVariables& d, const Catalog& catalog) {
  BuildingSpec s = base;
  for (auto o : kOrientations) {
    auto& g = s.group(o);
    g.wwr = d.wwr[index_of(o)];
    g.overhang_ratio = d.overhang_ratio[index_of(o)];
    if (g.glazing.id != d.glazing_id) g.glazing = catalog.glazing(d.glazing_id);
    if (g.wall.id != d.wall_id) g.wall = catalog.wall(d.wall_id);
  }
  if (s.roof.construction.id != d.roof_id) s.roof.construction = catalog.roof(d.roof_id);
  s.infiltration = d.infiltration;
  if (s.lighting.technology != d.lighting_technology) s.lighting = catalog.lighting_system(d.lighting_technology);
  if (s.hvac.id != d.hvac_id) s.hvac = catalog.hvac_system(d.hvac_id);
  return s;
}

double cost_index_per_m2(const BuildingSpec& spec) {
  if (!(spec.floor_area > 0)) throw DomainError("cost_index_per_m2: floor area must be > 0");
  double weighted = spec.roof.area * spec.roof.construction.cost_index;
  for (auto o : kOrientations) {
    const auto& g = spec.group(o);
    weighted += opaque_wall_area(spec, o) * g.wall.cost_index + glazed_area(spec, o) * g.glazing.cost_index;
  }
  return weighted / spec.floor_area + spec.hvac.cost_index;
}

OptimizeResult optimize(const BuildingSpec& spec, const ClimateProfile& climate, const CalibrationParams& calib,
                        const Catalog& catalog, const DesignSpace& space, const CodeLimits& limits, std::size_t k,
                        const OptimizeOptions& options) {
  if (k < 1) throw DomainError("optimize: k must be >= 1");
  if (auto v = validate_limits(limits); !v.empty()) {
    throw_violations("code limits", std::move(v));
  }
  const std::size_t n = space_size(space, options.size_cap);

  std::vector<std::size_t> order = options.evaluation_order;
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
  } else {
    auto check = order;
    std::sort(check.begin(), check.end());
    bool permutation = check.size() == n;
    for (std::size_t i = 0; permutation && i < n; ++i) permutation = check[i] == i;
    if (!permutation) throw DomainError("optimize: evaluation order is not a permutation");
  }

  struct Slot {
    bool feasible = false;
    double eui = 0.0;
    double cost = 0.0;
  };
  std::vector<Slot> slots(n);

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  constexpr std::size_t kChunk = 256;

  auto worker = [&] {
    try {
      for (;;) {
        const std::size_t begin = next.fetch_add(kChunk);
        if (begin >= n) return;
        const std::size_t end = std::min(n, begin + kChunk);
        for (std::size_t p = begin; p < end; ++p) {
          const std::size_t idx = order[p];
          const auto d = design_at(space, idx);
          if (!code_check(d, limits).empty()) continue;
          const auto s = apply_design(spec, d, catalog);
          const auto report = annual_end_use(s, climate, calib);
          slots[idx] = {true, eui(report, s.floor_area), cost_index_per_m2(s)};
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(n);
    }
  };

  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<std::size_t> feasible;
  for (std::size_t i = 0; i < n; ++i) {
    if (slots[i].feasible) feasible.push_back(i);
  }
  if (feasible.empty()) throw DomainError("optimize: no design in the space satisfies the code limits");

  std::sort(feasible.begin(), feasible.end(), [&](std::size_t a, std::size_t b) {
    if (slots[a].eui != slots[b].eui) return slots[a].eui < slots[b].eui;
    if (slots[a].cost != slots[b].cost) return slots[a].cost < slots[b].cost;
    return a < b;
  });

  OptimizeResult result;
  result.evaluated = n;
  result.feasible = feasible.size();
  double cheapest = std::numeric_limits<double>::infinity();
  const std::size_t keep = std::min(k, feasible.size());
  for (std::size_t r = 0; r < feasible.size(); ++r) {
    const auto& slot = slots[feasible[r]];
    const bool pareto = slot.cost < cheapest;
    cheapest = std::min(cheapest, slot.cost);
    if (r < keep) result.top.push_back({design_at(space, feasible[r]), slot.eui, slot.cost, pareto});
  }
  return result;
}

namespace {

using nlohmann::json;

double round9(double v) { return std::round(v * 1e9) / 1e9; }

// Array of fractions, or {"from": a, "to": b, "step": s}; arrays may hold ranges.
std::vector<double> fraction_list(const json& j, const std::string& path) {
  std::vector<double> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto item_path = path + "[" + std::to_string(i) + "]";
      if (j[i].is_object()) {
        const auto range = fraction_list(j[i], item_path);
        out.insert(out.end(), range.begin(), range.end());
      } else {
        out.push_back(json_util::as_fraction(j[i], item_path));
      }
    }
  } else if (j.is_object()) {
    const double from = json_util::as_fraction(json_util::get_field(j, "from", path), path + ".from");
    const double to = json_util::as_fraction(json_util::get_field(j, "to", path), path + ".to");
    const double step = json_util::as_fraction(json_util::get_field(j, "step", path), path + ".step");
    if (!(step > 0 && to >= from)) throw SpecError(SpecError::Kind::OutOfRange, path + ": need step > 0 and to >= from");
    const auto count = static_cast<long>(std::floor((to - from) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(round9(from + static_cast<double>(i) * step));
  } else {
    throw SpecError(SpecError::Kind::Syntax, path + ": expected an array or a range object");
  }
  if (out.empty()) throw SpecError(SpecError::Kind::MissingField, path + ": empty candidate list");
  return out;
}

std::vector<std::string> string_list(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SpecError(SpecError::Kind::Syntax, path + ": expected a non-empty array of ids");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw SpecError(SpecError::Kind::Syntax, path + ": ids must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

void per_orientation(const json& root, const char* key, PerOrientation<std::vector<double>>& target) {
  if (!root.contains(key)) return;
  const auto& obj = json_util::get_object(root, key, "");
  for (const auto& [name, value] : obj.items()) {
    const auto o = parse_orientation(name);
    if (!o) throw SpecError(SpecError::Kind::Unknown, std::string(key) + ": unknown orientation '" + name + "'");
    target[index_of(*o)] = fraction_list(value, std::string(key) + "." + name);
  }
}

}  // namespace

DesignSpace parse_design_space(std::string_view text, const BuildingSpec& base) {
  const auto j = json_util::parse_json(text);
  if (!j.is_object()) throw SpecError(SpecError::Kind::Syntax, "design space: expected an object");
  DesignSpace s = space_from_spec(base);
  per_orientation(j, "wwr", s.wwr);
  per_orientation(j, "overhang_ratio", s.overhang_ratio);
  if (j.contains("glazing")) s.glazing_ids = string_list(j["glazing"], "glazing");
  if (j.contains("wall")) s.wall_ids = string_list(j["wall"], "wall");
  if (j.contains("roof")) s.roof_ids = string_list(j["roof"], "roof");
  if (j.contains("infiltration")) s.infiltration = fraction_list(j["infiltration"], "infiltration");
  if (j.contains("lighting")) {
    s.lighting.clear();
    for (const auto& name : string_list(j["lighting"], "lighting")) {
      const auto t = parse_lighting_technology(name);
      if (!t) throw SpecError(SpecError::Kind::Unknown, "lighting: unknown technology '" + name + "'");
      s.lighting.push_back(*t);
    }
  }
  if (j.contains("hvac")) s.hvac_ids = string_list(j["hvac"], "hvac");
  for (const auto& [key, value] : j.items()) {
    static const std::array<std::string_view, 10> known{"wwr",  "overhang_ratio", "glazing",  "wall", "roof",
                                                         "infiltration", "lighting", "hvac", "code_limits",
                                                         "schema_version"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw SpecError(SpecError::Kind::Unknown, "design space: unknown key '" + key + "'");
    }
  }
  return s;
}

CodeLimits parse_code_limits(std::string_view text) {
  const auto root = json_util::parse_json(text);
  CodeLimits limits;
  if (!root.is_object() || !root.contains("code_limits")) return limits;
  const auto& j = json_util::get_object(root, "code_limits", "");
  if (j.contains("max_wwr")) {
    for (const auto& [name, value] : json_util::get_object(j, "max_wwr", "code_limits").items()) {
      const auto o = parse_orientation(name);
      if (!o) throw SpecError(SpecError::Kind::Unknown, "code_limits.max_wwr: unknown orientation '" + name + "'");
      const std::string path = "code_limits.max_wwr." + name;
      auto& w = limits.max_wwr[index_of(*o)];
      if (value.is_object()) {
        w.value = json_util::as_fraction(json_util::get_field(value, "value", path), path + ".value");
        w.strict = value.value("strict", true);
      } else {
        w.value = json_util::as_fraction(value, path);
        w.strict = true;
      }
    }
  }
  if (j.contains("overhang")) {
    for (const auto& [name, value] : json_util::get_object(j, "overhang", "code_limits").items()) {
      const auto o = parse_orientation(name);
      if (!o) throw SpecError(SpecError::Kind::Unknown, "code_limits.overhang: unknown orientation '" + name + "'");
      const std::string path = "code_limits.overhang." + name;
      auto& h = limits.overhang[index_of(*o)];
      if (value.contains("min")) h.min = json_util::as_fraction(value["min"], path + ".min");
      if (value.contains("max")) h.max = json_util::as_fraction(value["max"], path + ".max");
    }
  }
  if (auto v = validate_limits(limits); !v.empty()) {
    throw_violations("code limits", std::move(v));
  }
  return limits;
}

std::string results_to_csv(const OptimizeResult& result) {
  std::ostringstream out;
  out << "rank,index,wwr_N,wwr_S,wwr_E,wwr_W,overhang_N,overhang_S,overhang_E,overhang_W,glazing,wall,roof,"
         "infiltration_ach,lighting,hvac,eui_kwh_m2,cost_index_m2,pareto,violations\n";
  std::size_t rank = 1;
  for (const auto& r : result.top) {
    const auto& d = r.design;
    out << rank++ << ',' << d.index;
    for (double v : d.wwr) out << ',' << csv::format_double(v);
    for (double v : d.overhang_ratio) out << ',' << csv::format_double(v);
    out << ',' << d.glazing_id << ',' << d.wall_id << ',' << d.roof_id << ',' << csv::format_double(d.infiltration)
        << ',' << to_string(d.lighting_technology) << ',' << d.hvac_id << ',' << csv::format_double(r.eui) << ','
        << csv::format_double(r.cost_per_m2) << ',' << (r.pareto ? 1 : 0) << ",0\n";
  }
  return out.str();
}

std::string results_to_json(const OptimizeResult& result) {
  json designs = json::array();
  std::size_t rank = 1;
  for (const auto& r : result.top) {
    const auto& d = r.design;
    json wwr = json::object();
    json overhang = json::object();
    for (auto o : kOrientations) {
      wwr[std::string(to_string(o))] = d.wwr[index_of(o)];
      overhang[std::string(to_string(o))] = d.overhang_ratio[index_of(o)];
    }
    designs.push_back({{"rank", rank++},
                       {"index", d.index},
                       {"wwr", wwr},
                       {"overhang_ratio", overhang},
                       {"glazing", d.glazing_id},
                       {"wall", d.wall_id},
                       {"roof", d.roof_id},
                       {"infiltration_ach", d.infiltration},
                       {"lighting", std::string(to_string(d.lighting_technology))},
                       {"hvac", d.hvac_id},
                       {"eui_kwh_m2", r.eui},
                       {"cost_index_m2", r.cost_per_m2},
                       {"pareto", r.pareto}});
  }
  json j{{"evaluated", result.evaluated}, {"feasible", result.feasible}, {"designs", designs}};
  return j.dump(2) + "\n";
}

}  // namespace lowcarb::opt
