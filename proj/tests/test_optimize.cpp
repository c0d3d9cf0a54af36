#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "lowcarb/optimize.hpp"
#include "support.hpp"

using namespace lowcarb;
using namespace lowcarb::opt;

namespace {

const test::Fixtures& fx() {
  static const test::Fixtures f;
  return f;
}

const BuildingSpec& base() { return fx().baseline.building; }

// A 2 x 3 x 2 x 2 space over south WWR, glazing, lighting and hvac.
DesignSpace small_space() {
  auto s = space_from_spec(base());
  s.wwr[index_of(Orientation::S)] = {0.24, 0.4};
  s.glazing_ids = {"sgl_clr", "dbl_clr", "dbl_loe"};
  s.lighting = {LightingTechnology::Incandescent, LightingTechnology::Led};
  s.hvac_ids = {"vav", "heat_pump"};
  return s;
}

OptimizeResult run(const DesignSpace& space, const CodeLimits& limits, std::size_t k, OptimizeOptions options = {}) {
  return optimize(base(), fx().climate, fx().baseline.calibration, fx().catalog, space, limits, k, options);
}

}  // namespace

TEST(Enumerate, SingleVariable) {
  auto s = space_from_spec(base());
  s.glazing_ids = {"a", "b"};
  const auto d = enumerate(s);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].glazing_id, "a");
  EXPECT_EQ(d[1].glazing_id, "b");
  EXPECT_EQ(d[1].index, 1u);
}

TEST(Enumerate, LexicographicInDeclaredOrder) {
  auto s = space_from_spec(base());
  s.wwr[index_of(Orientation::N)] = {0.1, 0.2};
  s.hvac_ids = {"x", "y", "z"};
  const auto d = enumerate(s);
  ASSERT_EQ(d.size(), 6u);
  const std::vector<std::pair<double, std::string>> expect{{0.1, "x"}, {0.1, "y"}, {0.1, "z"},
                                                            {0.2, "x"}, {0.2, "y"}, {0.2, "z"}};
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(d[i].wwr[index_of(Orientation::N)], expect[i].first);
    EXPECT_EQ(d[i].hvac_id, expect[i].second);
    EXPECT_EQ(d[i], design_at(s, i));
  }
}

TEST(Enumerate, RetrofitSpaceSizeAndCap) {
  const auto text = test::read_fixture("retrofit_space.json");
  const auto s = parse_design_space(text, base());
  // wwr 1*7*1*1, overhang 3*6*3*3, glazing 3, wall 3, roof 2, ACH 4, lighting 2, hvac 2
  const std::size_t expected = 7 * (3 * 6 * 3 * 3) * 3 * 3 * 2 * 4 * 2 * 2;
  EXPECT_EQ(space_size(s), expected);
  EXPECT_EQ(s.wwr[index_of(Orientation::S)], (std::vector<double>{0.24, 0.4, 0.45, 0.5, 0.55, 0.6, 0.65}));
  EXPECT_THROW(space_size(s, expected - 1), DomainError);
  EXPECT_THROW(enumerate(s, 1000), DomainError);
  EXPECT_THROW(design_at(s, expected), DomainError);
}

TEST(Enumerate, EmptyListRejected) {
  auto s = space_from_spec(base());
  s.roof_ids.clear();
  EXPECT_THROW(space_size(s), SpecError);
}

TEST(CodeCheck, Examples) {
  const auto limits = parse_code_limits(test::read_fixture("retrofit_space.json"));
  DesignVariables d;
  d.wwr = {0.3, 0.5, 0.2, 0.2};
  EXPECT_TRUE(code_check(d, limits).empty());

  d.wwr[index_of(Orientation::E)] = 0.5;
  auto v = code_check(d, limits);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].field, "wwr.E");

  d.wwr = {0.44, 0.7, 0.2, 0.2};
  EXPECT_TRUE(code_check(d, limits).empty());  // strict north bound, inclusive south bound
  d.wwr[index_of(Orientation::N)] = 0.45;
  EXPECT_EQ(code_check(d, limits).size(), 1u);
  d.wwr[index_of(Orientation::W)] = 0.35;
  d.overhang_ratio[index_of(Orientation::S)] = 2.0 / 3.0;
  EXPECT_EQ(code_check(d, limits).size(), 3u);
}

TEST(CodeCheck, DefaultLimitsAcceptEverything) {
  DesignVariables d;
  d.wwr = {1.0, 1.0, 1.0, 1.0};
  d.overhang_ratio = {1.0, 0.0, 0.5, 0.25};
  EXPECT_TRUE(code_check(d, CodeLimits{}).empty());
  CodeLimits bad;
  bad.max_wwr[0].value = 0.0;
  EXPECT_FALSE(validate_limits(bad).empty());
}

TEST(ApplyDesign, UsesCatalogAndKeepsUnchanged) {
  auto d = design_at(space_from_spec(base()), 0);
  EXPECT_EQ(apply_design(base(), d, fx().catalog), base());
  d.glazing_id = "dbl_loe";
  d.lighting_technology = LightingTechnology::Led;
  d.hvac_id = "heat_pump";
  const auto s = apply_design(base(), d, fx().catalog);
  EXPECT_EQ(s.group(Orientation::W).glazing, fx().catalog.glazing("dbl_loe"));
  EXPECT_EQ(s.lighting, fx().catalog.lighting_system(LightingTechnology::Led));
  EXPECT_EQ(s.hvac.heating_fuel, HeatingFuel::Electric);
  d.wall_id = "straw";
  EXPECT_THROW(apply_design(base(), d, fx().catalog), SpecError);
}

TEST(Optimize, SingletonSpace) {
  const auto r = run(space_from_spec(base()), {}, 5);
  ASSERT_EQ(r.top.size(), 1u);
  const auto report = annual_end_use(base(), fx().climate, fx().baseline.calibration);
  EXPECT_DOUBLE_EQ(r.top[0].eui, eui(report, base().floor_area));
  EXPECT_TRUE(r.top[0].pareto);
}

TEST(Optimize, SmallerSouthWwrWins) {
  auto s = space_from_spec(base());
  s.wwr[index_of(Orientation::S)] = {0.40, 0.24};
  const auto r = run(s, {}, 2);
  ASSERT_EQ(r.top.size(), 2u);
  EXPECT_EQ(r.top[0].design.wwr[index_of(Orientation::S)], 0.24);
  EXPECT_LT(r.top[0].eui, r.top[1].eui);
}

TEST(Optimize, SortedAndAllLegal) {
  const auto limits = parse_code_limits(test::read_fixture("retrofit_space.json"));
  auto s = small_space();
  s.overhang_ratio[index_of(Orientation::E)] = {0.0, 0.25, 0.5};
  const auto r = run(s, limits, 1000);
  EXPECT_EQ(r.evaluated, 2u * 3 * 2 * 2 * 3);
  EXPECT_EQ(r.feasible, 2u * 3 * 2 * 2 * 2);
  EXPECT_EQ(r.top.size(), r.feasible);
  for (std::size_t i = 0; i < r.top.size(); ++i) {
    EXPECT_TRUE(code_check(r.top[i].design, limits).empty());
    if (i == 0) continue;
    const auto& a = r.top[i - 1];
    const auto& b = r.top[i];
    const bool ordered = a.eui < b.eui || (a.eui == b.eui && (a.cost_per_m2 < b.cost_per_m2 ||
                                                              (a.cost_per_m2 == b.cost_per_m2 &&
                                                               a.design.index < b.design.index)));
    EXPECT_TRUE(ordered) << i;
  }
}

TEST(Optimize, DeterministicUnderEvaluationOrder) {
  const auto s = small_space();
  const auto reference = run(s, {}, 24, {1, kDefaultSizeCap, {}});
  std::vector<std::size_t> order(space_size(s));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(order.begin(), order.end(), rng);
    const auto r = run(s, {}, 24, {static_cast<unsigned>(1 + trial % 4), kDefaultSizeCap, order});
    ASSERT_EQ(r.top.size(), reference.top.size());
    for (std::size_t i = 0; i < r.top.size(); ++i) {
      EXPECT_EQ(r.top[i].design, reference.top[i].design);
      EXPECT_EQ(r.top[i].eui, reference.top[i].eui);
    }
    EXPECT_EQ(results_to_csv(r), results_to_csv(reference));
  }
  EXPECT_THROW(run(s, {}, 3, {1, kDefaultSizeCap, {0, 1, 2}}), DomainError);
}

TEST(Optimize, AddingCandidatesNeverWorsensBest) {
  auto s = space_from_spec(base());
  double best = run(s, {}, 1).top[0].eui;
  const auto grow = [&](auto& list, auto value) {
    list.push_back(value);
    const double next = run(s, {}, 1).top[0].eui;
    EXPECT_LE(next, best);
    best = next;
  };
  grow(s.glazing_ids, std::string("dbl_clr"));
  grow(s.wwr[index_of(Orientation::S)], 0.6);
  grow(s.infiltration, 0.6);
  grow(s.hvac_ids, std::string("heat_pump"));
  grow(s.wall_ids, std::string("icf_r14"));
  grow(s.overhang_ratio[index_of(Orientation::S)], 1.0 / 3.0);
}

TEST(Optimize, KLargerThanFeasible) {
  const auto r = run(small_space(), {}, 1000000);
  EXPECT_EQ(r.top.size(), 24u);
}

TEST(Optimize, Errors) {
  EXPECT_THROW(run(small_space(), {}, 0), DomainError);
  CodeLimits tight;
  for (auto& w : tight.max_wwr) w = {0.1, true};
  EXPECT_THROW(run(small_space(), tight, 5), DomainError);
}

TEST(SpaceFile, ParseAndErrors) {
  const auto s = parse_design_space(R"({"wwr": {"S": [0.24, "2/5"]}, "lighting": ["led"]})", base());
  EXPECT_EQ(s.wwr[index_of(Orientation::S)], (std::vector<double>{0.24, 0.4}));
  EXPECT_EQ(s.wwr[index_of(Orientation::N)], (std::vector<double>{0.3}));
  EXPECT_EQ(s.lighting, (std::vector<LightingTechnology>{LightingTechnology::Led}));
  EXPECT_THROW(parse_design_space(R"({"wwr": {"Q": [0.2]}})", base()), SpecError);
  EXPECT_THROW(parse_design_space(R"({"glazing": []})", base()), SpecError);
  EXPECT_THROW(parse_design_space(R"({"lighting": ["gas"]})", base()), SpecError);
  EXPECT_THROW(parse_design_space(R"({"colour": ["red"]})", base()), SpecError);
  EXPECT_THROW(parse_design_space(R"({"infiltration": {"from": 1, "to": 0, "step": 0.1}})", base()), SpecError);
  EXPECT_THROW(parse_code_limits(R"({"code_limits": {"max_wwr": {"E": 1.5}}})"), SpecError);
  EXPECT_EQ(parse_code_limits("{}").max_wwr[0].value, 1.0);
}

TEST(Results, CsvHeaderAndRows) {
  const auto r = run(small_space(), {}, 3);
  const auto csv = results_to_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "rank,index,wwr_N,wwr_S,wwr_E,wwr_W,overhang_N,overhang_S,overhang_E,overhang_W,glazing,wall,roof,"
            "infiltration_ach,lighting,hvac,eui_kwh_m2,cost_index_m2,pareto,violations");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}
