#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rlen/apen.hpp"
#include "rlen/ar_oracle.hpp"
#include "rlen/cpd.hpp"
#include "rlen/csv.hpp"
#include "rlen/entropy.hpp"
#include "rlen/errors.hpp"
#include "rlen/kernels.hpp"
#include "rlen/lag_select.hpp"
#include "rlen/pipeline.hpp"
#include "rlen/simulate.hpp"
#include "rlen/theory.hpp"

namespace {

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  FILE* f = std::fopen(output_path.c_str(), "w");
  if (!f) throw rlen::DataError("cannot open output file " + output_path);
  std::fputs(text.c_str(), f);
  std::fclose(f);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> load_single_column(const std::string& path) {
  const rlen::SeriesMatrix m = rlen::read_matrix_csv(path);
  if (m.cols != 1) {
    throw rlen::DataError("expected a single-column CSV, got " + std::to_string(m.cols) +
                          " columns");
  }
  auto col = m.col(0);
  return {col.begin(), col.end()};
}

void add_io_flags(CLI::App* cmd, rlen::RunConfig& cfg) {
  cmd->add_option("--input", cfg.input_path, "input CSV, columns are series");
  cmd->add_option("--simulate", cfg.simulate, "case1|case2|case3 or a JSON simulation spec");
  cmd->add_option("--alpha", cfg.case1_alpha, "case 1 trig frequency");
  cmd->add_option("--N", cfg.sim_n, "simulated series length override");
  cmd->add_option("--P1", cfg.sim_p1, "columns from the first model");
  cmd->add_option("--P2", cfg.sim_p2, "columns from the second model");
  cmd->add_option("--seed", cfg.seed, "master seed");
  cmd->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
  cmd->add_option("--output,-o", cfg.output_path, "output path (stdout when omitted)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative-entropy complexity and change-point detection for intermittent "
               "time series"};
  app.require_subcommand(1);

  rlen::RunConfig cfg;
  int m_flag = 0;
  double r_flag = 0.2;
  bool r_abs = false;
  double penalty_flag = -1.0;
  long long k_flag = -1;
  bool no_transform = false;
  std::string method_name = "rlen";

  // simulate: write a simulated case matrix as CSV
  auto* sim = app.add_subcommand("simulate", "generate a simulated series matrix (CSV)");
  add_io_flags(sim, cfg);

  // select-lag
  auto* sel = app.add_subcommand("select-lag", "BIC lag-order selection (Algorithm 1 style)");
  add_io_flags(sel, cfg);
  sel->add_option("--M", cfg.M, "maximum lag scanned");

  // entropy
  auto* ent = app.add_subcommand("entropy", "per-series relative-entropy profile");
  add_io_flags(ent, cfg);
  ent->add_option("--m", m_flag, "lag order (required)")->required();

  // apen
  auto* ap = app.add_subcommand("apen", "per-series approximate entropy");
  add_io_flags(ap, cfg);
  ap->add_option("--m", m_flag, "template length")->required();
  ap->add_option("--r", r_flag, "tolerance radius (default 0.2 sd)");
  ap->add_flag("--r-absolute", r_abs, "treat --r as an absolute radius");

  // detect
  auto* det = app.add_subcommand("detect", "change-point detection on a scalar sequence");
  det->add_option("--input", cfg.input_path, "single-column CSV of scalar values")->required();
  det->add_option("--penalty", penalty_flag, "PELT penalty (default mean-shift heuristic)");
  det->add_option("--k", k_flag, "detect exactly K change-points");
  det->add_option("--min-seg", cfg.min_seg, "minimum segment length");
  det->add_option("--output,-o", cfg.output_path, "output path");

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "full run: lag selection, statistic, detection");
  add_io_flags(pipe, cfg);
  pipe->add_option("--method", method_name, "rlen|apen|mean|variance");
  pipe->add_option("--m", m_flag, "fixed lag order (skips lag selection)");
  pipe->add_option("--M", cfg.M, "maximum lag scanned");
  pipe->add_option("--penalty", penalty_flag, "PELT penalty");
  pipe->add_option("--k", k_flag, "detect exactly K change-points");
  pipe->add_option("--min-seg", cfg.min_seg, "minimum segment length");
  pipe->add_option("--r", r_flag, "apen tolerance radius");
  pipe->add_flag("--r-absolute", r_abs, "treat --r as absolute");
  pipe->add_flag("--no-auto-transform", no_transform, "fail instead of logistic-transforming");

  // oracle
  auto* orc = app.add_subcommand("oracle", "closed-form AR relative-entropy values");
  std::vector<double> phi;
  double phi1 = 0, phi2 = 0;
  int orc_m = 1, orc_s = 1, acf_k = 10;
  auto* orc_ar2 = orc->add_subcommand("ar2", "0.5 log((phi2-1)/phi_c)");
  orc_ar2->add_option("phi1", phi1)->required();
  orc_ar2->add_option("phi2", phi2)->required();
  auto* orc_arp = orc->add_subcommand("arp", "correlation-determinant form");
  orc_arp->add_option("--phi", phi, "AR coefficients")->required();
  orc_arp->add_option("--m", orc_m, "lag order")->required();
  orc_arp->add_option("--s", orc_s, "split position (default 1)");
  auto* orc_acf = orc->add_subcommand("acf", "Yule-Walker autocorrelations");
  orc_acf->add_option("--phi", phi, "AR coefficients")->required();
  orc_acf->add_option("--K", acf_k, "number of lags");
  orc->require_subcommand(1);

  // constants
  auto* con = app.add_subcommand("constants", "kernel and limiting-law constants");
  con->set_help_flag("--help", "print help");
  int con_m = 1;
  double con_h = 0.15;
  std::size_t con_n = 1000;
  con->add_option("--m", con_m, "lag order")->required();
  con->add_option("--h", con_h, "bandwidth")->required();
  con->add_option("--n", con_n, "effective sample count")->required();
  std::string con_out;
  con->add_option("--output,-o", con_out, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (m_flag > 0) cfg.fixed_m = static_cast<std::size_t>(m_flag);
    if (penalty_flag >= 0.0) cfg.penalty = penalty_flag;
    if (k_flag >= 0) cfg.fixed_k = static_cast<std::size_t>(k_flag);
    cfg.apen_r = r_flag;
    cfg.apen_r_absolute = r_abs;
    cfg.auto_transform = !no_transform;

    if (sim->parsed()) {
      auto [matrix, cp] = rlen::resolve_input(cfg);
      if (cfg.output_path.empty()) throw rlen::ArgumentError("simulate requires --output");
      rlen::write_matrix_csv(matrix, cfg.output_path);
      if (cp) std::cerr << "true change-point: " << *cp << "\n";
      return 0;
    }

    if (sel->parsed()) {
      auto [matrix, cp] = rlen::resolve_input(cfg);
      (void)cp;
      const auto report = rlen::select_lag(matrix, cfg.M, rlen::KernelSpec::epanechnikov(),
                                           rlen::NwLoo::kPrinted, cfg.threads);
      std::string text = "m_hat," + std::to_string(report.m_hat) + "\nm,bic_bar\n";
      for (std::size_t m = 1; m <= report.M; ++m) {
        text += std::to_string(m) + "," + num(report.bic_bar[m - 1]) + "\n";
      }
      emit(text, cfg.output_path);
      return 0;
    }

    if (ent->parsed()) {
      auto [matrix, cp] = rlen::resolve_input(cfg);
      (void)cp;
      const std::size_t m = static_cast<std::size_t>(m_flag);
      const auto grid = rlen::bandwidth_grid(matrix.rows - m, m, cfg.entropy_grid.lo_factor,
                                             cfg.entropy_grid.hi_factor,
                                             cfg.entropy_grid.points);
      const auto profile =
          rlen::entropy_profile(matrix, m, grid, rlen::KernelSpec::epanechnikov(), cfg.threads);
      std::string text = "series,h,value,s_count\n";
      for (std::size_t j = 0; j < profile.series.size(); ++j) {
        const auto& e = profile.series[j];
        text += std::to_string(j + 1) + "," + num(e.h) + "," + num(e.value) + "," +
                std::to_string(e.s_count) + "\n";
      }
      emit(text, cfg.output_path);
      return 0;
    }

    if (ap->parsed()) {
      auto [matrix, cp] = rlen::resolve_input(cfg);
      (void)cp;
      rlen::ApEnConfig acfg{static_cast<std::size_t>(m_flag), r_flag,
                            r_abs ? rlen::ApEnRadius::kAbsolute
                                  : rlen::ApEnRadius::kStdMultiple};
      std::string text = "series,apen\n";
      for (std::size_t j = 0; j < matrix.cols; ++j) {
        text += std::to_string(j + 1) + "," + num(rlen::apen(matrix.col(j), acfg)) + "\n";
      }
      emit(text, cfg.output_path);
      return 0;
    }

    if (det->parsed()) {
      const auto values = load_single_column(cfg.input_path);
      rlen::ChangePointResult r;
      if (cfg.fixed_k) {
        r = rlen::dp_detect_k(values, *cfg.fixed_k, cfg.min_seg);
      } else {
        const double pen = cfg.penalty.value_or(rlen::default_penalty(values));
        r = rlen::pelt_detect(values, pen, cfg.min_seg);
      }
      std::string text = "changepoints";
      for (auto c : r.changepoints) text += "," + std::to_string(c);
      text += "\npenalty," + num(r.penalty) + "\ncost," + num(r.cost) + "\nsegment_means";
      for (double v : r.segment_means) text += "," + num(v);
      text += "\n";
      emit(text, cfg.output_path);
      return 0;
    }

    if (pipe->parsed()) {
      cfg.method = [&] {
        if (method_name == "rlen") return rlen::Method::kRlen;
        if (method_name == "apen") return rlen::Method::kApEn;
        if (method_name == "mean") return rlen::Method::kMean;
        if (method_name == "variance") return rlen::Method::kVariance;
        throw rlen::ArgumentError("unknown --method " + method_name);
      }();
      const auto report = rlen::run_pipeline(cfg);
      emit(rlen::report_to_json(report), cfg.output_path);
      std::cerr << "elapsed " << report.timing_ms << " ms\n";
      return 0;
    }

    if (orc->parsed()) {
      if (orc_ar2->parsed()) {
        emit(num(rlen::ar2_rlen(phi1, phi2)) + "\n", "");
      } else if (orc_arp->parsed()) {
        emit(num(rlen::arp_rlen(phi, static_cast<std::size_t>(orc_m),
                                static_cast<std::size_t>(orc_s))) +
                 "\n",
             "");
      } else {
        const auto rho = rlen::yule_walker_autocorr(phi, static_cast<std::size_t>(acf_k));
        std::string text;
        for (std::size_t k = 0; k < rho.size(); ++k) {
          text += "rho_" + std::to_string(k + 1) + "," + num(rho[k]) + "\n";
        }
        emit(text, "");
      }
      return 0;
    }

    if (con->parsed()) {
      const auto tc =
          rlen::theory_constants(rlen::KernelSpec::epanechnikov(),
                                 static_cast<std::size_t>(con_m), con_h, con_n);
      std::string text;
      text += "kappa," + num(tc.kappa) + "\ntau," + num(tc.tau) + "\ntau1," + num(tc.tau1) +
              "\ntau2," + num(tc.tau2) + "\nd0," + num(tc.d0) + "\nd1," + num(tc.d1) +
              "\nc1," + num(tc.c1) + "\nc2," + num(tc.c2) + "\nbeta," + num(tc.beta) +
              "\nbeta1," + num(tc.beta1) + "\nbeta2," + num(tc.beta2) + "\nsigma_star2," +
              num(tc.sigma_star2) + "\n";
      emit(text, con_out);
      return 0;
    }
  } catch (const rlen::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rlen::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const rlen::DegeneracyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
