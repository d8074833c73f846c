#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rlen/apen.hpp"
#include "rlen/ar_oracle.hpp"
#include "rlen/cpd.hpp"
#include "rlen/entropy.hpp"
#include "rlen/errors.hpp"
#include "rlen/kernels.hpp"
#include "rlen/lag_select.hpp"
#include "rlen/pipeline.hpp"
#include "rlen/rng.hpp"
#include "rlen/simulate.hpp"
#include "rlen/theory.hpp"

namespace py = pybind11;
using namespace rlen;

namespace {

SeriesMatrix matrix_from_columns(const std::vector<std::vector<double>>& cols) {
  if (cols.empty()) throw ArgumentError("matrix: need at least one column");
  SeriesMatrix m = SeriesMatrix::zeros(cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != m.rows) throw ArgumentError("matrix: ragged columns");
    std::copy(cols[j].begin(), cols[j].end(), m.col(j).begin());
  }
  return m;
}

ModelSpec model_by_name(const std::string& kind, double alpha,
                        const std::vector<double>& phi, double sigma2, std::size_t burnin) {
  if (kind == "case1_model1") return ModelSpec::case1(1, alpha);
  if (kind == "case1_model2") return ModelSpec::case1(2, alpha);
  if (kind == "case3_model1") return ModelSpec::case3(1);
  if (kind == "case3_model2") return ModelSpec::case3(2);
  if (kind == "ar") return ModelSpec::ar_model(phi, sigma2, burnin);
  if (kind == "sarima1") return ModelSpec::sarima_process(1);
  if (kind == "sarima2") return ModelSpec::sarima_process(2);
  if (kind == "sarima3") return ModelSpec::sarima_process(3);
  throw ArgumentError("unknown model kind: " + kind);
}

}  // namespace

PYBIND11_MODULE(_rlen, m) {
  m.doc() = "Relative-entropy complexity and change-point detection for "
            "intermittent time series";

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<DegeneracyError>(m, "DegeneracyError", PyExc_ArithmeticError);

  // kernels
  m.def("base_kernel_eval",
        [](double u) { return base_kernel_eval(KernelSpec::epanechnikov(), u); }, py::arg("u"));
  m.def("kernel_moment",
        [](int l, double rho) { return kernel_moment(KernelSpec::epanechnikov(), l, rho); },
        py::arg("l"), py::arg("rho"));
  m.def("jackknife_eval",
        [](double x, double y, double h) {
          return jackknife_eval(KernelSpec::epanechnikov(), x, y, h);
        },
        py::arg("x"), py::arg("y"), py::arg("h"));
  m.def("kernel_constants", [] {
    const auto& k = KernelSpec::epanechnikov();
    return py::dict(py::arg("kappa") = k.kappa(), py::arg("tau") = k.tau(),
                    py::arg("tau1") = k.tau1(), py::arg("tau2") = k.tau2());
  });

  // relative entropy
  m.def("rlen_estimate",
        [](const std::vector<double>& series, std::size_t m_, double h) {
          const auto e = rlen_estimate(series, m_, h);
          return py::dict(py::arg("value") = e.value, py::arg("m") = e.m, py::arg("h") = e.h,
                          py::arg("s_count") = e.s_count, py::arg("n") = e.n);
        },
        py::arg("series"), py::arg("m"), py::arg("h"));
  m.def("default_entropy_grid", &default_entropy_grid, py::arg("n"), py::arg("m"));
  m.def("select_bandwidth",
        [](const std::vector<double>& series, std::size_t m_, std::vector<double> grid) {
          if (grid.empty()) grid = default_entropy_grid(series.size() - m_, m_);
          const auto e = select_bandwidth(series, m_, grid);
          return py::dict(py::arg("value") = e.value, py::arg("h") = e.h,
                          py::arg("s_count") = e.s_count, py::arg("n") = e.n);
        },
        py::arg("series"), py::arg("m"), py::arg("grid") = std::vector<double>{});
  m.def("entropy_profile",
        [](const std::vector<std::vector<double>>& cols, std::size_t m_,
           std::vector<double> grid, unsigned threads) {
          const SeriesMatrix mtx = matrix_from_columns(cols);
          if (grid.empty()) grid = default_entropy_grid(mtx.rows - m_, m_);
          const auto p = entropy_profile(mtx, m_, grid, KernelSpec::epanechnikov(), threads);
          std::vector<double> values = p.values(), hs;
          for (const auto& e : p.series) hs.push_back(e.h);
          return py::make_tuple(values, hs);
        },
        py::arg("columns"), py::arg("m"), py::arg("grid") = std::vector<double>{},
        py::arg("threads") = 0u);

  // closed-form oracles and theory constants
  m.def("ar2_rlen", &ar2_rlen, py::arg("phi1"), py::arg("phi2"));
  m.def("yule_walker_autocorr", &yule_walker_autocorr, py::arg("phi"), py::arg("K"));
  m.def("arp_rlen", &arp_rlen, py::arg("phi"), py::arg("m"), py::arg("s"));
  m.def("theory_constants",
        [](std::size_t m_, double h, std::size_t n) {
          const auto t = theory_constants(KernelSpec::epanechnikov(), m_, h, n);
          return py::dict(py::arg("kappa") = t.kappa, py::arg("tau") = t.tau,
                          py::arg("tau1") = t.tau1, py::arg("tau2") = t.tau2,
                          py::arg("d0") = t.d0, py::arg("d1") = t.d1, py::arg("c1") = t.c1,
                          py::arg("c2") = t.c2, py::arg("beta") = t.beta,
                          py::arg("beta1") = t.beta1, py::arg("beta2") = t.beta2,
                          py::arg("sigma_star2") = t.sigma_star2);
        },
        py::arg("m"), py::arg("h"), py::arg("n"));

  // lag selection
  m.def("bic_score",
        [](const std::vector<double>& series, std::size_t m_, std::vector<double> grid) {
          if (grid.empty()) grid = default_regression_grid(series.size() - m_, m_);
          const auto b = bic_score(series, m_, grid);
          return py::dict(py::arg("bic") = b.bic, py::arg("h_star") = b.h_star,
                          py::arg("sigma2") = b.sigma2, py::arg("v") = b.v,
                          py::arg("warnings") = b.warnings);
        },
        py::arg("series"), py::arg("m"), py::arg("grid") = std::vector<double>{});
  m.def("select_lag",
        [](const std::vector<std::vector<double>>& cols, std::size_t M, unsigned threads) {
          const auto r = select_lag(matrix_from_columns(cols), M,
                                    KernelSpec::epanechnikov(), NwLoo::kPrinted, threads);
          return py::make_tuple(r.m_hat, r.bic_bar);
        },
        py::arg("columns"), py::arg("M") = 10, py::arg("threads") = 0u);

  // approximate entropy
  m.def("apen",
        [](const std::vector<double>& series, std::size_t m_, double r, bool r_absolute) {
          return apen(series,
                      {m_, r, r_absolute ? ApEnRadius::kAbsolute : ApEnRadius::kStdMultiple});
        },
        py::arg("series"), py::arg("m") = 2, py::arg("r") = 0.2,
        py::arg("r_absolute") = false);

  // change-point detection
  m.def("pelt_detect",
        [](const std::vector<double>& values, double penalty, std::size_t min_seg) {
          const auto r = penalty < 0.0
                             ? pelt_detect(values, default_penalty(values), min_seg)
                             : pelt_detect(values, penalty, min_seg);
          return py::dict(py::arg("changepoints") = r.changepoints,
                          py::arg("segment_means") = r.segment_means,
                          py::arg("penalty") = r.penalty, py::arg("cost") = r.cost);
        },
        py::arg("values"), py::arg("penalty") = -1.0, py::arg("min_seg") = 2);
  m.def("dp_detect_k",
        [](const std::vector<double>& values, std::size_t K, std::size_t min_seg) {
          const auto r = dp_detect_k(values, K, min_seg);
          return py::dict(py::arg("changepoints") = r.changepoints,
                          py::arg("segment_means") = r.segment_means, py::arg("cost") = r.cost);
        },
        py::arg("values"), py::arg("K"), py::arg("min_seg") = 2);
  m.def("default_penalty", &default_penalty, py::arg("values"));
  m.def("welch_t_test",
        [](const std::vector<double>& a, const std::vector<double>& b) {
          const auto r = welch_t_test(a, b);
          return py::make_tuple(r.t, r.df, r.p);
        },
        py::arg("a"), py::arg("b"));

  // simulation
  m.def("gen_series",
        [](const std::string& kind, std::size_t N, std::uint64_t seed, double alpha,
           const std::vector<double>& phi, double sigma2, std::size_t burnin) {
          return gen_series(model_by_name(kind, alpha, phi, sigma2, burnin), N,
                            RandomStream(seed));
        },
        py::arg("kind"), py::arg("N"), py::arg("seed"), py::arg("alpha") = 1.5,
        py::arg("phi") = std::vector<double>{}, py::arg("sigma2") = 1.0,
        py::arg("burnin") = 500);
  m.def("build_case_matrix",
        [](const std::string& which, std::uint64_t seed, double alpha) {
          CaseMatrixSpec spec;
          if (which == "case1") {
            spec = CaseMatrixSpec::case1(alpha, seed);
          } else if (which == "case2") {
            spec = CaseMatrixSpec::case2(seed);
          } else if (which == "case3") {
            spec = CaseMatrixSpec::case3(seed);
          } else {
            throw ArgumentError("unknown case: " + which);
          }
          const auto [mtx, cp] = build_case_matrix(spec);
          std::vector<std::vector<double>> cols(mtx.cols);
          for (std::size_t j = 0; j < mtx.cols; ++j) {
            cols[j].assign(mtx.col(j).begin(), mtx.col(j).end());
          }
          return py::make_tuple(cols, cp);
        },
        py::arg("which"), py::arg("seed"), py::arg("alpha") = 1.5);
  m.def("matched_noise_variance", &matched_noise_variance, py::arg("phi_x"), py::arg("phi_y"),
        py::arg("sigma1_sq"));
  m.def("logistic_transform",
        [](const std::vector<double>& y) { return logistic_transform(y); }, py::arg("series"));
  m.def("extract_min_variance_window",
        [](const std::vector<double>& s, std::size_t window) {
          return extract_min_variance_window(s, window);
        },
        py::arg("series"), py::arg("window"));

  m.attr("__version__") = kVersion;
}
