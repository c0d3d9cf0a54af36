#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lowcarb/energy.hpp"
#include "lowcarb/model.hpp"

namespace lowcarb::opt {

// One point of the retrofit grid. `index` is its position in enumeration order.
struct DesignVariables {
  PerOrientation<double> wwr{};
  PerOrientation<double> overhang_ratio{};
  std::string glazing_id;
  std::string wall_id;
  std::string roof_id;
  double infiltration = 0.0;  // ACH
  LightingTechnology lighting_technology = LightingTechnology::Incandescent;
  std::string hvac_id;
  std::size_t index = 0;

  bool operator==(const DesignVariables&) const = default;
};

// Candidate lists in declared variable order:
// wwr N,S,E,W; overhang N,S,E,W; glazing; wall; roof; infiltration; lighting; hvac.
struct DesignSpace {
  PerOrientation<std::vector<double>> wwr;
  PerOrientation<std::vector<double>> overhang_ratio;
  std::vector<std::string> glazing_ids;
  std::vector<std::string> wall_ids;
  std::vector<std::string> roof_ids;
  std::vector<double> infiltration;
  std::vector<LightingTechnology> lighting;
  std::vector<std::string> hvac_ids;
};

inline constexpr std::size_t kDefaultSizeCap = 5'000'000;

// Singleton space holding the spec's current values.
DesignSpace space_from_spec(const BuildingSpec& spec);

// Number of designs in the Cartesian product. Throws DomainError if it exceeds
// `cap` and SpecError if any list is empty.
std::size_t space_size(const DesignSpace& space, std::size_t cap = kDefaultSizeCap);

// The design at position `index` (first variable varies slowest).
DesignVariables design_at(const DesignSpace& space, std::size_t index);

// Full Cartesian product in lexicographic order of the declared variable order.
std::vector<DesignVariables> enumerate(const DesignSpace& space, std::size_t cap = kDefaultSizeCap);

struct WwrLimit {
  double value = 1.0;
  bool strict = false;  // strict: wwr < value; otherwise wwr <= value
};

struct OverhangLimit {
  double min = 0.0;
  double max = 1.0;
};

struct CodeLimits {
  PerOrientation<WwrLimit> max_wwr{};
  PerOrientation<OverhangLimit> overhang{};
};

std::vector<Violation> validate_limits(const CodeLimits& limits);

// One Violation per exceeded bound.
std::vector<Violation> code_check(const DesignVariables& design, const CodeLimits& limits);

// Copies `base` with the design's variables applied. Construction ids are
// looked up in the catalog; an id matching the base spec's own component keeps
// that component. Lighting keeps the base system when the technology is
// unchanged.
BuildingSpec apply_design(const BuildingSpec& base, const DesignVariables& design, const Catalog& catalog);

// Envelope and plant cost index per m2 of floor: area-weighted construction
// cost indices plus the HVAC cost index. Dimensionless ranking aid.
double cost_index_per_m2(const BuildingSpec& spec);

struct RankedDesign {
  DesignVariables design;
  double eui = 0.0;          // kWh/(m2*yr)
  double cost_per_m2 = 0.0;  // cost_index_per_m2
  bool pareto = false;       // not dominated in (eui, cost) over the feasible set
};

struct OptimizeOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
  std::size_t size_cap = kDefaultSizeCap;
  // Evaluation order as a permutation of [0, size). Empty = natural order.
  std::vector<std::size_t> evaluation_order;
};

struct OptimizeResult {
  std::vector<RankedDesign> top;
  std::size_t evaluated = 0;
  std::size_t feasible = 0;
};

// Evaluates every code-legal design with fixed calibration and returns the
// first k sorted by EUI, then cost_per_m2, then enumeration index. Throws
// DomainError if k < 1 or no design passes code_check.
OptimizeResult optimize(const BuildingSpec& spec, const ClimateProfile& climate, const CalibrationParams& calib,
                        const Catalog& catalog, const DesignSpace& space, const CodeLimits& limits, std::size_t k,
                        const OptimizeOptions& options = {});

// Space file: per-variable candidate arrays; absent variables keep the base
// spec's value. Fractions may be numbers or "a/b" strings. An optional
// "code_limits" object is read by parse_code_limits.
DesignSpace parse_design_space(std::string_view text, const BuildingSpec& base);
CodeLimits parse_code_limits(std::string_view text);

std::string results_to_csv(const OptimizeResult& result);
std::string results_to_json(const OptimizeResult& result);

}  // namespace lowcarb::opt
