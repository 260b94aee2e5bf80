#include "ccl/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ccl/config.hpp"
#include "ccl/error.hpp"
#include "ccl/evaluate.hpp"
#include "ccl/event_log.hpp"
#include "ccl/io.hpp"
#include "ccl/pipeline.hpp"
#include "ccl/simulate.hpp"
#include "ccl/well_plan.hpp"

namespace ccl {

namespace {

constexpr const char* kVersion = "1.0.0";

// --------------------------------------------------------------------------
// Diagnostics on stderr, filtered by CCL_LOG_LEVEL (error|warn|info|debug).

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

Level log_level() {
  const char* env = std::getenv("CCL_LOG_LEVEL");
  if (env == nullptr) return Level::warn;
  const std::string v(env);
  if (v == "error" || v == "quiet") return Level::error;
  if (v == "info") return Level::info;
  if (v == "debug") return Level::debug;
  return Level::warn;
}

class Logger {
 public:
  explicit Logger(std::ostream& err) : err_(err), level_(log_level()) {}
  void info(const std::string& msg) const { write(Level::info, "info", msg); }
  void debug(const std::string& msg) const { write(Level::debug, "debug", msg); }
  void warn(const std::string& msg) const { write(Level::warn, "warning", msg); }

 private:
  void write(Level l, const char* tag, const std::string& msg) const {
    if (static_cast<int>(l) <= static_cast<int>(level_)) err_ << "ccl: " << tag << ": " << msg << '\n';
  }
  std::ostream& err_;
  Level level_;
};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string percent(const std::optional<double>& v) { return v ? fixed(100.0 * *v, 1) + "%" : "undefined"; }

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

WellPlan plan_or_default(const std::string& path) { return path.empty() ? default_well_plan() : load_well_plan(path); }

DetectConfig config_or_default(const std::string& path) { return path.empty() ? DetectConfig{} : load_config(path); }

void print_counts(std::ostream& out, std::size_t tp, std::size_t tn, std::size_t fp, std::size_t fn,
                  const Metrics& m) {
  out << "tp " << tp << "  tn " << tn << "  fp " << fp << "  fn " << fn << '\n';
  out << "accuracy  " << percent(m.accuracy) << '\n';
  out << "precision " << percent(m.precision) << '\n';
  out << "recall    " << percent(m.recall) << '\n';
  out << "f1        " << percent(m.f1) << '\n';
}

// --------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::uint64_t seed = 1;
  std::string noise = "moderate";
  std::vector<int> suppress;
  std::string plan;
  std::string trace;
  std::string truth;
  std::string plan_out;
  double sample_rate = 1000.0;
  std::size_t truth_stride = 10;
  double v_target = MotionProfile{}.v_target;
  double jitter = MotionProfile{}.jitter;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, const Logger& log) {
  const WellPlan plan = plan_or_default(a.plan);
  MotionProfile profile;
  profile.v_target = a.v_target;
  profile.jitter = a.jitter;
  const InterferenceConfig noise = a.noise == "none" ? InterferenceConfig::none() : InterferenceConfig::moderate();
  SimulationOptions options;
  options.suppress = a.suppress;

  log.info("simulating " + std::to_string(plan.collars.size()) + " collars, seed " + std::to_string(a.seed));
  const SimulatedRun run = generate_trace(plan, profile, noise, a.sample_rate, a.seed, options);

  TraceFile trace;
  trace.header = {{"sample_rate", format_double(a.sample_rate)},
                  {"generator", std::string("ccl-simulate ") + kVersion},
                  {"seed", std::to_string(a.seed)},
                  {"noise", a.noise},
                  {"normalization", "amplitude in units of the baseline noise sigma"}};
  trace.rows = run.trace;
  save_trace(a.trace, trace);
  if (!a.truth.empty()) save_truth(a.truth, run.truth.decimated(a.truth_stride));
  if (!a.plan_out.empty()) save_well_plan(a.plan_out, plan);

  out << "wrote " << run.trace.size() << " samples (" << fixed(run.trace.back().t, 3) << " s) to " << a.trace << '\n';
  out << "collar crossings " << run.truth.crossings.size() << ", suppressed " << run.truth.suppressed_indices().size()
      << ", interference intervals " << run.truth.interference.size() << '\n';
  return 0;
}

// --------------------------------------------------------------------------
// detect

struct DetectArgs {
  std::string trace;
  std::string plan;
  std::string config;
  std::string log = "-";
  bool offline = false;
};

int cmd_detect(const DetectArgs& a, std::ostream& out, std::ostream& err, const Logger& log) {
  const WellPlan plan = plan_or_default(a.plan);
  const DetectConfig config = config_or_default(a.config);

  std::ofstream file;
  std::ostream* sink = &out;
  if (a.log != "-") {
    file.open(a.log);
    if (!file) throw FormatError(0, "cannot write event log " + a.log);
    sink = &file;
  }
  std::ostream& summary = a.log == "-" ? err : out;

  IgnitionDecision ignition;
  std::vector<CollarEvent> events;
  if (a.offline) {
    const TraceFile trace = load_trace(a.trace);
    const DetectResult result = run_detect(trace.rows, plan, config);
    write_event_log(*sink, result.log);
    ignition = result.ignition;
    events = result.events;
  } else {
    std::ifstream in(a.trace);
    if (!in) throw FormatError(0, "cannot open trace " + a.trace);
    TraceReader reader(in);
    *sink << kEventLogMagic << '\n';
    DetectionPipeline pipeline(plan, config, [sink](const ordered_json& r) { *sink << serialize_record(r) << '\n'; });
    std::uint64_t n = 0;
    try {
      while (auto s = reader.next()) {
        pipeline.push(*s);
        ++n;
      }
    } catch (const FormatError& e) {
      throw FormatError(e.line(), a.trace + ": " + e.what());
    }
    pipeline.finish();
    log.debug("streamed " + std::to_string(n) + " samples");
    ignition = pipeline.ignition();
    events = pipeline.events();
  }
  sink->flush();

  std::size_t real = 0, patch = 0, fake = 0;
  for (const auto& e : events) {
    if (e.kind == CollarKind::real) ++real;
    if (e.kind == CollarKind::patch) ++patch;
    if (e.kind == CollarKind::rejected_fake) ++fake;
  }
  summary << "events: " << real << " real, " << patch << " patch, " << fake << " rejected-fake\n";
  summary << "ignition: " << to_string(ignition.state);
  if (ignition.state == IgnitionState::ignited) {
    summary << " at t=" << fixed(ignition.t_ignite, 3) << " s, depth " << fixed(ignition.depth_at_ignite, 2) << " m";
  } else if (!ignition.cause.empty()) {
    summary << " (" << ignition.cause << ")";
  }
  summary << '\n';
  return ignition.state == IgnitionState::armed ? 1 : 0;
}

// --------------------------------------------------------------------------
// replay

std::string replay_line(const ordered_json& r) {
  const std::string type = r.at("type").get<std::string>();
  std::string line = "t=" + pad(fixed(r.at("t").get<double>(), 3), 9) + " s  ";
  if (type == "start") {
    const auto& p = r.at("plan");
    line += "START     plan collars " + std::to_string(p.at("first_index").get<int>()) + ".." +
            std::to_string(p.at("last_index").get<int>());
    for (const auto& iv : p.at("intervals")) {
      line += ", interval [" + fixed(iv.at("lo").get<double>(), 2) + ", " + fixed(iv.at("hi").get<double>(), 2) + "] m";
      if (iv.contains("target")) line += " target " + fixed(iv.at("target").get<double>(), 2) + " m";
    }
  } else if (type == "collar") {
    const std::string kind = r.at("kind").get<std::string>();
    if (kind == "rejected-fake") {
      line += "fake      at " + fixed(r.at("event_t").get<double>(), 3) + " s rejected (" +
              r.at("reason").get<std::string>() + "), predicted " + fixed(r.at("predicted_depth").get<double>(), 2) +
              " m";
    } else {
      line += pad_right("COLLAR " + std::to_string(r.at("index").get<int>()), 10) +
              pad(fixed(r.at("depth").get<double>(), 2), 8) + " m  " + kind;
      if (r.value("recovered", false)) line += " (recovered)";
      line += " at " + fixed(r.at("event_t").get<double>(), 3) + " s, predicted " +
              fixed(r.at("predicted_depth").get<double>(), 2) + " m";
    }
  } else if (type == "calibration") {
    line += "calibrate speed " + fixed(r.at("speed").get<double>(), 3) + " m/s (raw " +
            fixed(r.at("raw_speed").get<double>(), 3) + "), count " + std::to_string(r.at("count").get<int>());
  } else if (type == "ignition") {
    line += "IGNITION  " + r.at("state").get<std::string>() + " (" + r.at("cause").get<std::string>() + "), depth " +
            fixed(r.at("depth").get<double>(), 2) + " m after collar " + std::to_string(r.at("last_index").get<int>());
  } else if (type == "gate") {
    line += "gate      " + r.at("result").get<std::string>() + ", " +
            std::to_string(r.at("pulse").at("width_samples").get<std::uint64_t>()) + " samples";
  } else if (type == "threshold") {
    line += "threshold mu " + fixed(r.at("mu").get<double>(), 4) + " sigma " + fixed(r.at("sigma").get<double>(), 4) +
            ", depth " + fixed(r.at("depth").get<double>(), 2) + " m";
  } else if (type == "sample") {
    line += "sample    x " + fixed(r.at("x").get<double>(), 4);
  } else if (type == "end") {
    line += "END       " + std::to_string(r.at("samples").get<std::uint64_t>()) + " samples, depth " +
            fixed(r.at("final_depth").get<double>(), 2) + " m, last collar " +
            std::to_string(r.at("last_index").get<int>()) + ", ignition " + r.at("ignition").get<std::string>();
  } else {
    line += type;
  }
  return line;
}

struct ReplayArgs {
  std::string log;
  bool all = false;
  bool fakes = false;
};

int cmd_replay(const ReplayArgs& a, std::ostream& out) {
  const EventLog log = load_event_log(a.log);
  for (const auto& r : log.records) {
    const std::string type = r.at("type").get<std::string>();
    const bool always = type == "start" || type == "end" || type == "ignition" ||
                        (type == "collar" && r.at("kind") != "rejected-fake");
    const bool shown = always || a.all || (a.fakes && type == "collar");
    if (shown) out << replay_line(r) << '\n';
  }
  return 0;
}

// --------------------------------------------------------------------------
// evaluate

IgnitionOutcome ignition_outcome(const EventLog& log, const GroundTruth* truth) {
  IgnitionOutcome o;
  o.state = "armed";
  const auto rec = ignition_record(log);
  if (!rec) return o;
  o.state = rec->at("state").get<std::string>();
  o.t = rec->at("t").get<double>();
  o.estimated_depth = rec->at("depth").get<double>();
  if (truth != nullptr && o.state == "ignited") {
    const double d = truth->depth_at(o.t);
    o.true_depth = d;
    const int k = rec->value("interval", -1);
    const auto& intervals = log.records.front().at("plan").at("intervals");
    if (k >= 0 && static_cast<std::size_t>(k) < intervals.size()) {
      const double lo = intervals[static_cast<std::size_t>(k)].at("lo").get<double>();
      const double hi = intervals[static_cast<std::size_t>(k)].at("hi").get<double>();
      o.interval_deviation = d < lo ? lo - d : (d > hi ? d - hi : 0.0);
    }
  }
  return o;
}

struct EvaluateArgs {
  std::string log;
  std::string truth;
  std::string out;
  std::string label;
  double neighborhood = MatchOptions{}.neighborhood;
  bool no_patches = false;
  std::optional<std::size_t> tp, tn, fp, fn;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  MetricsReport report;
  report.label = a.label;
  if (a.tp || a.tn || a.fp || a.fn) {
    if (!a.log.empty() || !a.truth.empty()) throw ConfigError("give either --log/--truth or --tp/--tn/--fp/--fn");
    report.tp = a.tp.value_or(0);
    report.tn = a.tn.value_or(0);
    report.fp = a.fp.value_or(0);
    report.fn = a.fn.value_or(0);
    report.values = metrics(report.tp, report.tn, report.fp, report.fn);
  } else {
    if (a.log.empty() || a.truth.empty()) throw ConfigError("evaluate needs --log and --truth (or raw counts)");
    const EventLog log = load_event_log(a.log);
    if (log.records.empty() || log.records.front().at("type") != "start") {
      throw FormatError(2, a.log + ": event log does not begin with a start record");
    }
    const GroundTruth truth = load_truth(a.truth);
    const auto events = collar_events(log);
    MatchOptions options;
    options.neighborhood = a.neighborhood;
    options.count_patches = !a.no_patches;
    const MatchReport match = match_events(events, truth, options);
    report.tp = match.tp;
    report.tn = match.tn;
    report.fp = match.fp;
    report.fn = match.fn;
    report.values = metrics(match);
    report.neighborhood = options.neighborhood;
    report.count_patches = options.count_patches;
    for (const auto& e : events) {
      if (e.kind == CollarKind::real) ++report.real_events;
      if (e.kind == CollarKind::patch) ++report.patch_events;
      if (e.kind == CollarKind::rejected_fake) ++report.rejected_fakes;
    }
    report.ignition = ignition_outcome(log, &truth);
  }

  print_counts(out, report.tp, report.tn, report.fp, report.fn, report.values);
  if (report.ignition) {
    const auto& ig = *report.ignition;
    out << "ignition  " << ig.state;
    if (ig.state == "ignited") {
      out << " at t=" << fixed(ig.t, 3) << " s, estimated " << fixed(ig.estimated_depth, 2) << " m";
      if (ig.true_depth) out << ", true " << fixed(*ig.true_depth, 2) << " m";
      if (ig.interval_deviation) out << ", outside interval by " << fixed(*ig.interval_deviation, 2) << " m";
    }
    out << '\n';
  }
  if (!a.out.empty()) save_metrics_report(a.out, report);
  return 0;
}

// --------------------------------------------------------------------------
// report

struct ReportArgs {
  std::vector<std::string> metrics;
  std::string series_log;
  std::string series_out;
  std::string csv;
};

void write_series(const EventLog& log, std::ostream& csv) {
  csv << "t,type,x,mu,upper,lower,depth,kind,index\n";
  for (const auto& r : log.records) {
    const std::string type = r.at("type").get<std::string>();
    const std::string t = format_double(r.at("t").get<double>());
    if (type == "threshold") {
      csv << t << ",threshold," << format_double(r.at("x").get<double>()) << ','
          << format_double(r.at("mu").get<double>()) << ',' << format_double(r.at("upper").get<double>()) << ','
          << format_double(r.at("lower").get<double>()) << ',' << format_double(r.at("depth").get<double>())
          << ",,\n";
    } else if (type == "collar") {
      const std::string et = format_double(r.at("event_t").get<double>());
      csv << et << ",collar,,,,,";
      if (r.contains("depth")) csv << format_double(r.at("depth").get<double>());
      csv << ',' << r.at("kind").get<std::string>() << ',';
      if (r.contains("index")) csv << r.at("index").get<int>();
      csv << '\n';
    } else if (type == "ignition") {
      csv << t << ",ignition,,,,," << format_double(r.at("depth").get<double>()) << ','
          << r.at("state").get<std::string>() << ",\n";
    }
  }
}

int cmd_report(const ReportArgs& a, std::ostream& out) {
  if (a.metrics.empty() && a.series_log.empty()) throw ConfigError("report needs metrics files or --series-log");
  if (!a.metrics.empty()) {
    std::vector<MetricsReport> reports;
    for (const auto& path : a.metrics) reports.push_back(load_metrics_report(path));

    const std::vector<std::string> head = {"run", "TP", "TN", "FP", "FN", "Accuracy", "Precision", "Recall", "F1"};
    std::vector<std::vector<std::string>> rows;
    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      rows.push_back({r.label.empty() ? a.metrics[i] : r.label, std::to_string(r.tp), std::to_string(r.tn),
                      std::to_string(r.fp), std::to_string(r.fn), percent(r.values.accuracy),
                      percent(r.values.precision), percent(r.values.recall), percent(r.values.f1)});
      tp += r.tp;
      tn += r.tn;
      fp += r.fp;
      fn += r.fn;
    }
    const Metrics total = metrics(tp, tn, fp, fn);
    rows.push_back({"total", std::to_string(tp), std::to_string(tn), std::to_string(fp), std::to_string(fn),
                    percent(total.accuracy), percent(total.precision), percent(total.recall), percent(total.f1)});

    std::vector<std::size_t> width(head.size());
    for (std::size_t c = 0; c < head.size(); ++c) {
      width[c] = head[c].size();
      for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
    }
    auto print_row = [&](const std::vector<std::string>& row) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << (c == 0 ? pad_right(row[c], width[c]) : "  " + pad(row[c], width[c]));
      }
      out << '\n';
    };
    print_row(head);
    for (const auto& row : rows) print_row(row);

    if (!a.csv.empty()) {
      std::ofstream csv(a.csv);
      if (!csv) throw FormatError(0, "cannot write " + a.csv);
      csv << "run,tp,tn,fp,fn,accuracy,precision,recall,f1\n";
      auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
      for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        csv << rows[i][0] << ',' << r.tp << ',' << r.tn << ',' << r.fp << ',' << r.fn << ','
            << opt(r.values.accuracy) << ',' << opt(r.values.precision) << ',' << opt(r.values.recall) << ','
            << opt(r.values.f1) << '\n';
      }
      csv << "total," << tp << ',' << tn << ',' << fp << ',' << fn << ',' << opt(total.accuracy) << ','
          << opt(total.precision) << ',' << opt(total.recall) << ',' << opt(total.f1) << '\n';
    }
  }
  if (!a.series_log.empty()) {
    if (a.series_out.empty()) throw ConfigError("--series-log needs --series-out");
    const EventLog log = load_event_log(a.series_log);
    std::ofstream csv(a.series_out);
    if (!csv) throw FormatError(0, "cannot write " + a.series_out);
    write_series(log, csv);
    out << "wrote signal/threshold/event series to " << a.series_out << '\n';
  }
  return 0;
}

// --------------------------------------------------------------------------
// defaults

struct DefaultsArgs {
  std::string config;
  std::string plan;
  int collars = 120;
};

int cmd_defaults(const DefaultsArgs& a, std::ostream& out) {
  const DetectConfig config;
  const WellPlan plan = default_well_plan(a.collars);
  if (a.config.empty() && a.plan.empty()) {
    out << to_json(config).dump(2) << '\n';
    return 0;
  }
  if (!a.config.empty()) save_config(a.config, config);
  if (!a.plan.empty()) save_well_plan(a.plan, plan);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"CCL casing-collar detection: simulate, detect, replay, evaluate, report", "ccl"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  const Logger log(err);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic CCL trace with ground truth");
  simulate->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  simulate->add_option("--noise", sim.noise, "Interference preset")
      ->check(CLI::IsMember({"none", "moderate"}))
      ->capture_default_str();
  simulate->add_option("--suppress", sim.suppress, "Collar indices whose pulse is removed")->delimiter(',');
  simulate->add_option("--plan", sim.plan, "Well plan JSON (default: built-in plan)")->check(CLI::ExistingFile);
  simulate->add_option("--trace", sim.trace, "Output trace file")->required();
  simulate->add_option("--truth", sim.truth, "Output ground-truth JSON");
  simulate->add_option("--plan-out", sim.plan_out, "Also write the plan used");
  simulate->add_option("--rate", sim.sample_rate, "Sample rate in Hz")->capture_default_str();
  simulate->add_option("--truth-stride", sim.truth_stride, "Keep every n-th true depth sample")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--speed", sim.v_target, "Target winch speed in m/s")->capture_default_str();
  simulate->add_option("--jitter", sim.jitter, "Relative speed jitter")->capture_default_str();

  DetectArgs det;
  auto* detect = app.add_subcommand("detect", "Run the detection pipeline over a trace");
  detect->add_option("--trace", det.trace, "Input trace file")->required()->check(CLI::ExistingFile);
  detect->add_option("--plan", det.plan, "Well plan JSON (default: built-in plan)")->check(CLI::ExistingFile);
  detect->add_option("--config", det.config, "Detection config JSON (default: built-in)")->check(CLI::ExistingFile);
  detect->add_option("--log", det.log, "Output event log ('-' for stdout)")->capture_default_str();
  detect->add_flag("--offline", det.offline, "Load the whole trace before processing");

  ReplayArgs rep;
  auto* replay = app.add_subcommand("replay", "Print an event log as a timeline");
  replay->add_option("--log", rep.log, "Event log")->required()->check(CLI::ExistingFile);
  replay->add_flag("--all", rep.all, "Include every record");
  replay->add_flag("--fakes", rep.fakes, "Include rejected fake collars");

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score an event log against ground truth");
  evaluate->add_option("--log", ev.log, "Event log")->check(CLI::ExistingFile);
  evaluate->add_option("--truth", ev.truth, "Ground-truth JSON")->check(CLI::ExistingFile);
  evaluate->add_option("--out", ev.out, "Write a metrics report JSON");
  evaluate->add_option("--label", ev.label, "Run label stored in the report");
  evaluate->add_option("--neighborhood", ev.neighborhood, "Match neighborhood in meters")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  evaluate->add_flag("--no-patches", ev.no_patches, "Do not count patch events");
  evaluate->add_option("--tp", ev.tp, "True positives (raw-count mode)");
  evaluate->add_option("--tn", ev.tn, "True negatives (raw-count mode)");
  evaluate->add_option("--fp", ev.fp, "False positives (raw-count mode)");
  evaluate->add_option("--fn", ev.fn, "False negatives (raw-count mode)");

  ReportArgs rpt;
  auto* report = app.add_subcommand("report", "Aggregate metrics reports and export plot series");
  report->add_option("metrics", rpt.metrics, "Metrics report files")->check(CLI::ExistingFile);
  report->add_option("--csv", rpt.csv, "Also write the table as CSV");
  report->add_option("--series-log", rpt.series_log, "Event log to export as a CSV series")
      ->check(CLI::ExistingFile);
  report->add_option("--series-out", rpt.series_out, "CSV output for --series-log");

  DefaultsArgs def;
  auto* defaults = app.add_subcommand("defaults", "Print or write the default config and well plan");
  defaults->add_option("--config", def.config, "Write the default config here");
  defaults->add_option("--plan", def.plan, "Write the default well plan here");
  defaults->add_option("--collars", def.collars, "Collar count for the default plan")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*simulate) return cmd_simulate(sim, out, log);
    if (*detect) return cmd_detect(det, out, err, log);
    if (*replay) return cmd_replay(rep, out);
    if (*evaluate) return cmd_evaluate(ev, out);
    if (*report) return cmd_report(rpt, out);
    if (*defaults) return cmd_defaults(def, out);
  } catch (const Error& e) {
    err << "ccl: error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "ccl: error: malformed document: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace ccl
