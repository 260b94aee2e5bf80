#include <fstream>
#include <sstream>

#include "doctest.h"
#include "temp_dir.hpp"

#include "ccl/error.hpp"
#include "ccl/io.hpp"

using namespace ccl;

namespace {

std::size_t format_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_trace(in);
  } catch (const FormatError& e) {
    return e.line();
  }
  FAIL("expected a format error");
  return 0;
}

}  // namespace

TEST_CASE("trace text round-trips byte for byte") {
  const std::string text =
      "#CCL-TRACE 1\n# sample_rate 1000\n# generator test\nt x\n0 0.1\n0.001 -3.25\n0.002 1e-300\n0.003 "
      "0.30000000000000004\n";
  std::istringstream in(text);
  const auto trace = parse_trace(in);
  CHECK(trace.sample_rate() == 1000.0);
  CHECK(trace.header_value("generator") == "test");
  CHECK_FALSE(trace.header_value("seed"));
  REQUIRE(trace.rows.size() == 4);
  CHECK(trace.rows[3].x == 0.1 + 0.2);
  std::ostringstream out;
  write_trace(out, trace);
  CHECK(out.str() == text);
}

TEST_CASE("numbers are written in shortest round-trip form") {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, 1097.47}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1097.47) == "1097.47");
}

TEST_CASE("trace format errors name the line") {
  CHECK(format_error_line("") == 1);
  CHECK(format_error_line("#CCL-TRACE 2\n") == 1);
  CHECK(format_error_line("#CCL-TRACE 1\n# sample_rate 1000\nt x\n0 1\nabc\n") == 5);
  CHECK(format_error_line("#CCL-TRACE 1\nt x\n0 1\n0.002 nan\n") == 4);
  CHECK(format_error_line("#CCL-TRACE 1\nt x\n0.5 1\n0.2 1\n") == 4);
  CHECK(format_error_line("#CCL-TRACE 1\nt x\n0 1\n\n") == 4);
  CHECK(format_error_line("#CCL-TRACE 1\nbogus\n") == 2);
  CHECK(format_error_line("#CCL-TRACE 1\n# sample_rate 1000\n") == 2);
}

TEST_CASE("sample rate must be present and positive") {
  std::istringstream in("#CCL-TRACE 1\n# sample_rate -4\nt x\n");
  const auto t = parse_trace(in);
  CHECK_THROWS_AS(t.sample_rate(), FormatError);
}

TEST_CASE("streaming reader agrees with the whole-file parser") {
  const std::string text = "#CCL-TRACE 1\n# sample_rate 100\nt x\n0 1\n0.01 2\n0.02 3\n";
  std::istringstream a(text), b(text);
  const auto whole = parse_trace(a);
  TraceReader reader(b);
  CHECK(reader.header() == whole.header);
  std::size_t i = 0;
  while (auto s = reader.next()) {
    REQUIRE(i < whole.rows.size());
    CHECK(s->t == whole.rows[i].t);
    CHECK(s->x == whole.rows[i].x);
    ++i;
  }
  CHECK(i == whole.rows.size());
  std::istringstream bad("#CCL-TRACE 1\nt x\n0 1\n0.01 zz\n");
  TraceReader r2(bad);
  CHECK(r2.next());
  CHECK_THROWS_AS(r2.next(), FormatError);
}

TEST_CASE("well plan round-trip with the field collar pair") {
  TempDir dir;
  WellPlan plan;
  plan.collars = {{110, 1097.47}, {111, 1107.06}};
  plan.intervals = {{1097.47, 1107.06, 1100.0}};
  save_well_plan(dir.file("plan.json"), plan);
  const auto back = load_well_plan(dir.file("plan.json"));
  REQUIRE(back.collars.size() == 2);
  CHECK(back.collars[0].index == 110);
  CHECK(back.collars[0].depth == 1097.47);
  CHECK(back.collars[1].depth == 1107.06);
  CHECK(back.depth_of(110) == 1097.47);
  REQUIRE(back.intervals.size() == 1);
  CHECK(back.intervals[0].target == 1100.0);
  CHECK(to_json(back) == to_json(plan));
}

TEST_CASE("well plan errors") {
  auto doc = to_json(default_well_plan(3));
  doc["collars"][1]["depth"] = 1.0;
  try {
    plan_from_json(doc);
    FAIL("expected a plan error");
  } catch (const PlanError& e) {
    CHECK(e.kind() == PlanError::Kind::non_monotone);
    CHECK(e.record() == 2);
  }
  doc = to_json(default_well_plan(3));
  doc["collars"] = ordered_json::array();
  try {
    plan_from_json(doc);
    FAIL("expected a plan error");
  } catch (const PlanError& e) {
    CHECK(e.kind() == PlanError::Kind::empty);
  }
  doc = to_json(default_well_plan(3));
  doc["collars"][0]["depth"] = "deep";
  CHECK_THROWS_AS(plan_from_json(doc), PlanError);
  doc = to_json(default_well_plan(3));
  doc["format"] = "something-else";
  CHECK_THROWS(plan_from_json(doc));
  CHECK_THROWS_AS(load_well_plan("/nonexistent/plan.json"), Error);
}

TEST_CASE("truth round-trip") {
  TempDir dir;
  const auto run = generate_trace(default_well_plan(8), MotionProfile{}, InterferenceConfig::moderate(), 1000.0, 9);
  const auto truth = run.truth.decimated(10);
  save_truth(dir.file("truth.json"), truth);
  const auto back = load_truth(dir.file("truth.json"));
  CHECK(back.depth == truth.depth);
  CHECK(back.depth_stride == 10);
  REQUIRE(back.crossings.size() == truth.crossings.size());
  for (std::size_t i = 0; i < back.crossings.size(); ++i) {
    CHECK(back.crossings[i].t == truth.crossings[i].t);
    CHECK(back.crossings[i].amplitude == truth.crossings[i].amplitude);
    CHECK(back.crossings[i].suppressed == truth.crossings[i].suppressed);
  }
  CHECK(back.interference.size() == truth.interference.size());
  CHECK(to_json(back) == to_json(truth));
}

TEST_CASE("metrics report round-trip") {
  TempDir dir;
  MetricsReport r;
  r.label = "field";
  r.tp = 579;
  r.fp = 7;
  r.fn = 9;
  r.values = metrics(579, 0, 7, 9);
  r.real_events = 580;
  r.ignition = IgnitionOutcome{"ignited", 494.2, 1100.0, 1100.3, 0.0};
  save_metrics_report(dir.file("m.json"), r);
  const auto back = load_metrics_report(dir.file("m.json"));
  CHECK(back.label == "field");
  CHECK(back.tp == 579);
  CHECK(*back.values.f1 == *r.values.f1);
  REQUIRE(back.ignition);
  CHECK(back.ignition->true_depth == 1100.3);
  CHECK(to_json(back) == to_json(r));

  MetricsReport empty;
  empty.values = metrics(0, 0, 0, 0);
  const auto e2 = metrics_report_from_json(to_json(empty));
  CHECK_FALSE(e2.values.precision.has_value());
  CHECK_FALSE(e2.ignition.has_value());
}

TEST_CASE("trace files") {
  TempDir dir;
  TraceFile t;
  t.header = {{"sample_rate", "500"}};
  t.rows = {{0.0, 1.5}, {0.002, -0.25}};
  save_trace(dir.file("t.txt"), t);
  const auto back = load_trace(dir.file("t.txt"));
  CHECK(back.header == t.header);
  CHECK(back.rows.size() == 2);
  CHECK(back.rows[1].x == -0.25);
  CHECK_THROWS_AS(load_trace(dir.file("none.txt")), FormatError);
}
