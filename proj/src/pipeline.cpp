#include "rlen/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rlen/csv.hpp"
#include "rlen/entropy.hpp"
#include "rlen/errors.hpp"
#include "rlen/parallel.hpp"

namespace rlen {

namespace {

// ---------------------------------------------------------------------------
// Canonical JSON writing: fixed field order, doubles as %.17g, NaN -> null.

std::string fmt_double(double v) {
  if (std::isnan(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

class JsonWriter {
 public:
  void begin_object() { sep(); out_ += '{'; first_ = true; }
  void end_object() { out_ += '}'; first_ = false; }
  void begin_array() { sep(); out_ += '['; first_ = true; }
  void end_array() { out_ += ']'; first_ = false; }
  void key(const char* k) {
    sep();
    out_ += '"';
    out_ += k;
    out_ += "\":";
    first_ = true;  // value follows without a comma
  }
  void value(double v) { sep(); out_ += fmt_double(v); }
  void value(std::size_t v) { sep(); out_ += std::to_string(v); }
  void value(unsigned v) { sep(); out_ += std::to_string(v); }
  void value(bool v) { sep(); out_ += v ? "true" : "false"; }
  void value(const std::string& v) { sep(); out_ += '"' + json_escape(v) + '"'; }
  void null() { sep(); out_ += "null"; }
  const std::string& str() const { return out_; }

 private:
  void sep() {
    if (!first_ && !out_.empty() && out_.back() != '{' && out_.back() != '[' &&
        out_.back() != ':') {
      out_ += ',';
    }
    first_ = false;
  }
  std::string out_;
  bool first_ = true;
};

const char* method_name(Method m) {
  switch (m) {
    case Method::kRlen: return "rlen";
    case Method::kApEn: return "apen";
    case Method::kMean: return "mean";
    default: return "variance";
  }
}

Method method_from_name(const std::string& s) {
  if (s == "rlen") return Method::kRlen;
  if (s == "apen") return Method::kApEn;
  if (s == "mean") return Method::kMean;
  if (s == "variance") return Method::kVariance;
  throw ArgumentError("unknown method: " + s);
}

void write_config(JsonWriter& w, const RunConfig& c) {
  w.begin_object();
  w.key("input_path"); w.value(c.input_path);
  w.key("simulate"); w.value(c.simulate);
  w.key("case1_alpha"); w.value(c.case1_alpha);
  w.key("sim_n"); w.value(c.sim_n);
  w.key("sim_p1"); w.value(c.sim_p1);
  w.key("sim_p2"); w.value(c.sim_p2);
  w.key("method"); w.value(std::string(method_name(c.method)));
  w.key("fixed_m");
  if (c.fixed_m) w.value(*c.fixed_m); else w.null();
  w.key("max_lag"); w.value(c.M);
  w.key("entropy_grid");
  w.begin_object();
  w.key("points"); w.value(static_cast<std::size_t>(c.entropy_grid.points));
  w.key("lo_factor"); w.value(c.entropy_grid.lo_factor);
  w.key("hi_factor"); w.value(c.entropy_grid.hi_factor);
  w.end_object();
  w.key("regression_grid");
  w.begin_object();
  w.key("points"); w.value(static_cast<std::size_t>(c.regression_grid.points));
  w.key("lo_factor"); w.value(c.regression_grid.lo_factor);
  w.key("hi_factor"); w.value(c.regression_grid.hi_factor);
  w.end_object();
  w.key("penalty");
  if (c.penalty) w.value(*c.penalty); else w.null();
  w.key("fixed_k");
  if (c.fixed_k) w.value(*c.fixed_k); else w.null();
  w.key("min_seg"); w.value(c.min_seg);
  w.key("apen_r"); w.value(c.apen_r);
  w.key("apen_r_absolute"); w.value(c.apen_r_absolute);
  w.key("seed"); w.value(c.seed);
  w.key("threads"); w.value(c.threads);
  w.key("auto_transform"); w.value(c.auto_transform);
  w.key("output_path"); w.value(c.output_path);
  w.end_object();
}

}  // namespace

std::string report_to_json(const RunReport& r) {
  JsonWriter w;
  w.begin_object();
  w.key("version"); w.value(r.version);
  w.key("config");
  write_config(w, r.config);
  w.key("m_used"); w.value(r.m_used);
  w.key("lag_selected"); w.value(r.lag_selected);
  w.key("bic_bar");
  w.begin_array();
  for (double v : r.bic_bar) w.value(v);
  w.end_array();
  w.key("lag_table");
  w.begin_array();
  for (const auto& row : r.lag_table) {
    w.begin_array();
    for (const auto& e : row) {
      w.begin_object();
      w.key("bic"); w.value(e.bic);
      w.key("h_star"); w.value(e.h_star);
      w.key("sigma2"); w.value(e.sigma2);
      w.key("v"); w.value(e.v);
      w.end_object();
    }
    w.end_array();
  }
  w.end_array();
  w.key("column_names");
  w.begin_array();
  for (const auto& nm : r.column_names) w.value(nm);
  w.end_array();
  w.key("stat_values");
  w.begin_array();
  for (double v : r.stat_values) w.value(v);
  w.end_array();
  w.key("stat_bandwidths");
  w.begin_array();
  for (double v : r.stat_bandwidths) w.value(v);
  w.end_array();
  w.key("changepoints");
  w.begin_array();
  for (std::size_t c : r.changepoints) w.value(c);
  w.end_array();
  w.key("segment_means");
  w.begin_array();
  for (double v : r.segment_means) w.value(v);
  w.end_array();
  w.key("penalty_used"); w.value(r.penalty_used);
  w.key("segments");
  w.begin_array();
  for (const auto& s : r.segments) {
    w.begin_object();
    w.key("size"); w.value(s.size);
    w.key("mean"); w.value(s.mean);
    w.key("stddev"); w.value(s.stddev);
    w.end_object();
  }
  w.end_array();
  w.key("welch_p");
  w.begin_array();
  for (double v : r.welch_p) w.value(v);
  w.end_array();
  w.key("warnings");
  w.begin_array();
  for (const auto& s : r.warnings) w.value(s);
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

namespace {

using nlohmann::json;

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.input_path = j.at("input_path").get<std::string>();
  c.simulate = j.at("simulate").get<std::string>();
  c.case1_alpha = j.at("case1_alpha").get<double>();
  c.sim_n = j.at("sim_n").get<std::size_t>();
  c.sim_p1 = j.at("sim_p1").get<std::size_t>();
  c.sim_p2 = j.at("sim_p2").get<std::size_t>();
  c.method = method_from_name(j.at("method").get<std::string>());
  if (!j.at("fixed_m").is_null()) c.fixed_m = j.at("fixed_m").get<std::size_t>();
  c.M = j.at("max_lag").get<std::size_t>();
  c.entropy_grid = {j.at("entropy_grid").at("points").get<int>(),
                    j.at("entropy_grid").at("lo_factor").get<double>(),
                    j.at("entropy_grid").at("hi_factor").get<double>()};
  c.regression_grid = {j.at("regression_grid").at("points").get<int>(),
                       j.at("regression_grid").at("lo_factor").get<double>(),
                       j.at("regression_grid").at("hi_factor").get<double>()};
  if (!j.at("penalty").is_null()) c.penalty = j.at("penalty").get<double>();
  if (!j.at("fixed_k").is_null()) c.fixed_k = j.at("fixed_k").get<std::size_t>();
  c.min_seg = j.at("min_seg").get<std::size_t>();
  c.apen_r = j.at("apen_r").get<double>();
  c.apen_r_absolute = j.at("apen_r_absolute").get<bool>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.threads = j.at("threads").get<unsigned>();
  c.auto_transform = j.at("auto_transform").get<bool>();
  c.output_path = j.at("output_path").get<std::string>();
  return c;
}

double double_or_nan(const json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

}  // namespace

RunReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("report_from_json: ") + e.what());
  }
  RunReport r;
  r.version = j.at("version").get<std::string>();
  r.config = config_from_json(j.at("config"));
  r.m_used = j.at("m_used").get<std::size_t>();
  r.lag_selected = j.at("lag_selected").get<bool>();
  r.bic_bar = j.at("bic_bar").get<std::vector<double>>();
  for (const auto& row : j.at("lag_table")) {
    std::vector<LagTableEntry> entries;
    for (const auto& e : row) {
      entries.push_back({e.at("bic").get<double>(), e.at("h_star").get<double>(),
                         e.at("sigma2").get<double>(), e.at("v").get<double>()});
    }
    r.lag_table.push_back(std::move(entries));
  }
  r.column_names = j.at("column_names").get<std::vector<std::string>>();
  r.stat_values = j.at("stat_values").get<std::vector<double>>();
  r.stat_bandwidths = j.at("stat_bandwidths").get<std::vector<double>>();
  r.changepoints = j.at("changepoints").get<std::vector<std::size_t>>();
  r.segment_means = j.at("segment_means").get<std::vector<double>>();
  r.penalty_used = j.at("penalty_used").get<double>();
  for (const auto& s : j.at("segments")) {
    r.segments.push_back({s.at("size").get<std::size_t>(), s.at("mean").get<double>(),
                          double_or_nan(s.at("stddev"))});
  }
  for (const auto& p : j.at("welch_p")) r.welch_p.push_back(double_or_nan(p));
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

bool RunReport::equals_serialized(const RunReport& other) const {
  return report_to_json(*this) == report_to_json(other);
}

void write_report(const RunReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("write_report: cannot open " + path);
  out << report_to_json(report);
  if (!out) throw DataError("write_report: write failed for " + path);
}

namespace {

ModelSpec model_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  ModelSpec m;
  if (kind == "case1_model1" || kind == "case1_model2") {
    m = ModelSpec::case1(kind == "case1_model1" ? 1 : 2, j.value("alpha", 1.5));
  } else if (kind == "case3_model1" || kind == "case3_model2") {
    m = ModelSpec::case3(kind == "case3_model1" ? 1 : 2);
  } else if (kind == "ar") {
    m = ModelSpec::ar_model(j.at("phi").get<std::vector<double>>(),
                            j.value("sigma2", 1.0), j.value("burnin", std::size_t{500}));
  } else if (kind == "sarima") {
    m.kind = ModelKind::kSarima;
    SarimaSpec& p = m.sarima;
    p.ar = j.value("ar", std::vector<double>{});
    p.ma = j.value("ma", std::vector<double>{});
    if (j.contains("seasonal_ar")) {
      for (const auto& t : j.at("seasonal_ar")) {
        p.seasonal_ar.emplace_back(t.at(0).get<std::size_t>(), t.at(1).get<double>());
      }
    }
    p.d = j.value("d", std::size_t{0});
    p.ds = j.value("ds", std::size_t{0});
    p.s = j.value("s", std::size_t{0});
    p.c = j.value("c", 0.0);
    p.sigma2 = j.value("sigma2", 1.0);
    m.burnin = j.value("burnin", std::size_t{0});
  } else {
    throw ArgumentError("unknown model kind: " + kind);
  }
  if (j.contains("sigma")) m.sigma = j.at("sigma").get<double>();
  if (j.contains("burnin")) m.burnin = j.at("burnin").get<std::size_t>();
  if (j.contains("init")) m.init = j.at("init").get<std::vector<double>>();
  return m;
}

CaseMatrixSpec case_spec_from_file(const std::string& path, const RunConfig& c) {
  std::ifstream in(path);
  if (!in) throw DataError("simulation spec: cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("simulation spec: ") + e.what());
  }
  CaseMatrixSpec s;
  s.N = j.at("N").get<std::size_t>();
  s.P1 = j.at("P1").get<std::size_t>();
  s.P2 = j.at("P2").get<std::size_t>();
  s.seed = j.value("seed", c.seed);
  s.spec1 = model_from_json(j.at("model1"));
  s.spec2 = j.contains("model2") ? model_from_json(j.at("model2")) : s.spec1;
  return s;
}

}  // namespace

std::pair<SeriesMatrix, std::optional<std::size_t>> resolve_input(const RunConfig& c) {
  const bool has_input = !c.input_path.empty();
  const bool has_sim = !c.simulate.empty();
  if (has_input == has_sim) {
    throw ArgumentError("exactly one of --input and --simulate must be given");
  }
  if (has_input) {
    return {read_matrix_csv(c.input_path), std::nullopt};
  }
  CaseMatrixSpec spec;
  if (c.simulate == "case1") {
    spec = CaseMatrixSpec::case1(c.case1_alpha, c.seed);
  } else if (c.simulate == "case2") {
    spec = CaseMatrixSpec::case2(c.seed);
  } else if (c.simulate == "case3") {
    spec = CaseMatrixSpec::case3(c.seed);
  } else {
    spec = case_spec_from_file(c.simulate, c);
  }
  if (c.sim_n) spec.N = c.sim_n;
  if (c.sim_p1) spec.P1 = c.sim_p1;
  if (c.sim_p2) spec.P2 = c.sim_p2;
  auto [matrix, cp] = build_case_matrix(spec);
  return {std::move(matrix), cp};
}

namespace {

std::vector<double> column_stats(const SeriesMatrix& m, Method method, std::size_t lag,
                                 const RunConfig& c, std::vector<double>* bandwidths,
                                 const std::vector<double>& entropy_grid) {
  std::vector<double> out(m.cols, 0.0);
  switch (method) {
    case Method::kRlen: {
      const auto profile =
          entropy_profile(m, lag, entropy_grid, KernelSpec::epanechnikov(), c.threads);
      bandwidths->resize(m.cols);
      for (std::size_t j = 0; j < m.cols; ++j) {
        out[j] = profile.series[j].value;
        (*bandwidths)[j] = profile.series[j].h;
      }
      break;
    }
    case Method::kApEn: {
      ApEnConfig cfg{lag, c.apen_r,
                     c.apen_r_absolute ? ApEnRadius::kAbsolute : ApEnRadius::kStdMultiple};
      parallel_for(m.cols, c.threads, [&](std::size_t j) { out[j] = apen(m.col(j), cfg); });
      break;
    }
    case Method::kMean: {
      for (std::size_t j = 0; j < m.cols; ++j) {
        double acc = 0.0;
        for (double v : m.col(j)) acc += v;
        out[j] = acc / static_cast<double>(m.rows);
      }
      break;
    }
    case Method::kVariance: {
      for (std::size_t j = 0; j < m.cols; ++j) {
        double mean = 0.0;
        for (double v : m.col(j)) mean += v;
        mean /= static_cast<double>(m.rows);
        double ss = 0.0;
        for (double v : m.col(j)) ss += (v - mean) * (v - mean);
        out[j] = ss / static_cast<double>(m.rows - 1);
      }
      break;
    }
  }
  return out;
}

}  // namespace

RunReport run_pipeline(const RunConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();

  RunReport report;
  report.version = kVersion;
  report.config = config;

  auto [matrix, true_cp] = resolve_input(config);
  (void)true_cp;
  report.column_names = matrix.names;
  if (report.column_names.empty()) {
    for (std::size_t j = 0; j < matrix.cols; ++j) {
      report.column_names.push_back("series" + std::to_string(j + 1));
    }
  }

  bool outside = false;
  for (double v : matrix.data) {
    if (!(v >= 0.0 && v <= 1.0)) {
      outside = true;
      break;
    }
  }
  if (outside) {
    if (!config.auto_transform) {
      throw DataError("input values outside [0,1]; rerun with auto-transform or rescale");
    }
    for (auto& v : matrix.data) v = 1.0 / (1.0 + std::exp(-v));
    report.warnings.push_back(
        "input values outside [0,1]; logistic transform applied automatically");
  }

  // Lag order: fixed, or Algorithm 1 when the statistic needs one.
  const bool needs_lag = config.method == Method::kRlen || config.method == Method::kApEn;
  std::size_t lag = config.fixed_m.value_or(0);
  if (needs_lag && lag == 0) {
    const auto sel = select_lag(matrix, config.M, KernelSpec::epanechnikov(),
                                NwLoo::kPrinted, config.threads);
    report.lag_selected = true;
    report.bic_bar = sel.bic_bar;
    report.lag_table.resize(sel.per_series.size());
    for (std::size_t j = 0; j < sel.per_series.size(); ++j) {
      for (const auto& b : sel.per_series[j]) {
        report.lag_table[j].push_back({b.bic, b.h_star, b.sigma2, b.v});
        for (const auto& wmsg : b.warnings) report.warnings.push_back(wmsg);
      }
    }
    lag = sel.m_hat;
  }
  report.m_used = needs_lag ? lag : 0;

  std::vector<double> entropy_grid;
  if (config.method == Method::kRlen) {
    entropy_grid = bandwidth_grid(matrix.rows - lag, lag, config.entropy_grid.lo_factor,
                                  config.entropy_grid.hi_factor, config.entropy_grid.points);
  }
  report.stat_values =
      column_stats(matrix, config.method, lag, config, &report.stat_bandwidths, entropy_grid);

  // Change-point detection on the per-column statistic sequence.
  ChangePointResult det;
  if (config.fixed_k) {
    det = dp_detect_k(report.stat_values, *config.fixed_k, config.min_seg);
  } else {
    const double pen = config.penalty.value_or(default_penalty(report.stat_values));
    det = pelt_detect(report.stat_values, pen, config.min_seg);
  }
  report.changepoints = det.changepoints;
  report.segment_means = det.segment_means;
  report.penalty_used = det.penalty;

  std::vector<std::size_t> bounds{0};
  for (std::size_t cp : det.changepoints) bounds.push_back(cp - 1);
  bounds.push_back(report.stat_values.size());
  for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
    SegmentSummary s;
    s.size = bounds[k + 1] - bounds[k];
    double mean = 0.0;
    for (std::size_t i = bounds[k]; i < bounds[k + 1]; ++i) mean += report.stat_values[i];
    mean /= static_cast<double>(s.size);
    double ss = 0.0;
    for (std::size_t i = bounds[k]; i < bounds[k + 1]; ++i) {
      ss += (report.stat_values[i] - mean) * (report.stat_values[i] - mean);
    }
    s.mean = mean;
    s.stddev = s.size > 1 ? std::sqrt(ss / static_cast<double>(s.size - 1)) : std::nan("");
    report.segments.push_back(s);
  }
  for (std::size_t k = 0; k + 1 < report.segments.size(); ++k) {
    if (report.segments[k].size < 2 || report.segments[k + 1].size < 2) {
      report.welch_p.push_back(std::nan(""));
      continue;
    }
    std::span<const double> all(report.stat_values);
    const auto a = all.subspan(bounds[k], report.segments[k].size);
    const auto b = all.subspan(bounds[k + 1], report.segments[k + 1].size);
    report.welch_p.push_back(welch_t_test(a, b).p);
  }

  report.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace rlen
