#include "splitconf/confsets.hpp"
#include "splitconf/estimators.hpp"
#include "splitconf/losses.hpp"
#include "splitconf/presets.hpp"
#include "splitconf/runconfig.hpp"
#include "splitconf/simulation.hpp"
#include "splitconf/stats.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <span>

namespace py = pybind11;
using namespace splitconf;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Split-sample confidence sets for M-estimation";

  py::register_exception<CapabilityError>(m, "CapabilityError");
  py::register_exception<SingularMatrixError>(m, "SingularMatrixError");
  py::register_exception<ConfigError>(m, "ConfigError");

  // stats
  m.def("normal_cdf", &normal_cdf, py::arg("x"));
  m.def("normal_quantile", &normal_quantile, py::arg("p"));
  m.def(
      "sample_mean_var",
      [](const std::vector<double>& values) {
        SampleStats s = sample_mean_var(values);
        return py::make_tuple(s.mean, s.variance, s.count);
      },
      py::arg("values"), "Returns (mean, variance, count) with the n-1 divisor.");

  py::class_<RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("replication_id"))
      .def("uniform", &RngStream::uniform)
      .def("normal", &RngStream::normal)
      .def("laplace", &RngStream::laplace)
      .def("next_u64", &RngStream::next_u64)
      .def_property_readonly("seed", &RngStream::seed)
      .def_property_readonly("replication_id", &RngStream::replication_id);
  m.def("make_stream", &make_stream, py::arg("seed"), py::arg("replication_id"));

  // losses
  py::class_<DiffStats>(m, "DiffStats")
      .def_readonly("emp_mean", &DiffStats::emp_mean)
      .def_readonly("emp_var", &DiffStats::emp_var)
      .def_readonly("n", &DiffStats::n);

  py::class_<LossModel>(m, "LossModel")
      .def_readonly("param_dim", &LossModel::param_dim)
      .def_readonly("uniform_bound", &LossModel::uniform_bound)
      .def("loss", [](const LossModel& model, const Vector& theta,
                      const Eigen::RowVectorXd& row) { return model.loss(theta, row); })
      .def("log_likelihood",
           [](const LossModel& model, const Vector& theta, const Eigen::RowVectorXd& row) {
             if (!model.has_log_likelihood()) {
               throw CapabilityError("model has no log-likelihood");
             }
             return model.log_likelihood(theta, row);
           })
      .def("hessian_estimator",
           [](const LossModel& model, const Dataset& rows) {
             if (!model.has_hessian_estimator()) {
               throw CapabilityError("model has no Hessian estimator");
             }
             return model.hessian_estimator(rows);
           })
      .def_property_readonly("has_log_likelihood", &LossModel::has_log_likelihood)
      .def_property_readonly("has_hessian_estimator", &LossModel::has_hessian_estimator);

  m.def("mean_loss", &mean_loss, py::arg("d"));
  m.def("regression_loss", &regression_loss, py::arg("d"));
  m.def("manski_loss", &manski_loss, py::arg("d"));
  m.def("pinball_loss", &pinball_loss, py::arg("gamma"));
  m.def("gaussian_regression_loglik", &gaussian_regression_loglik, py::arg("d"), py::arg("sigma"));
  m.def("loss_diff_stats", &loss_diff_stats, py::arg("model"), py::arg("theta"),
        py::arg("theta_hat1"), py::arg("d2_rows"));

  // estimators
  py::class_<SplitIndices>(m, "SplitIndices")
      .def_readonly("d1", &SplitIndices::d1)
      .def_readonly("d2", &SplitIndices::d2);
  m.def(
      "split",
      [](Eigen::Index n_total, double ratio, bool shuffle, RngStream& stream) {
        return split(n_total, ratio, shuffle, stream);
      },
      py::arg("n_total"), py::arg("ratio"), py::arg("shuffle"), py::arg("stream"));
  m.def("sample_mean_estimator", &sample_mean_estimator, py::arg("d1_rows"));
  m.def("ols_estimator", &ols_estimator, py::arg("d1_rows"));
  m.def("max_score_2d", &max_score_2d, py::arg("d1_rows"), py::arg("grid_size") = 4096);
  m.def(
      "sample_quantile",
      [](const std::vector<double>& values, double gamma) { return sample_quantile(values, gamma); },
      py::arg("values"), py::arg("gamma"));

  // confidence sets
  py::enum_<MethodKind>(m, "MethodKind")
      .value("Naive", MethodKind::Naive)
      .value("UniversalInference", MethodKind::UniversalInference)
      .value("EmpiricalBernstein", MethodKind::EmpiricalBernstein)
      .value("Studentized", MethodKind::Studentized)
      .value("BiasCorrected", MethodKind::BiasCorrected);

  py::class_<MethodSpec>(m, "MethodSpec")
      .def(py::init<>())
      .def_readwrite("kind", &MethodSpec::kind)
      .def_readwrite("alpha", &MethodSpec::alpha)
      .def_readwrite("b0", &MethodSpec::b0)
      .def_readwrite("sigma", &MethodSpec::sigma)
      .def("requires_loglik", &MethodSpec::requires_loglik)
      .def("label", &MethodSpec::label);

  m.def("make_naive", &make_naive, py::arg("alpha"));
  m.def("make_universal", &make_universal, py::arg("alpha"), py::arg("sigma") = 1.0);
  m.def("make_empirical_bernstein", &make_empirical_bernstein, py::arg("alpha"), py::arg("b0"));
  m.def("make_studentized", &make_studentized, py::arg("alpha"));
  m.def("make_bias_corrected", &make_bias_corrected, py::arg("alpha"));

  py::class_<MembershipResult>(m, "MembershipResult")
      .def_readonly("statistic", &MembershipResult::statistic)
      .def_readonly("threshold", &MembershipResult::threshold)
      .def_readonly("contained", &MembershipResult::contained)
      .def_readonly("diff_stats", &MembershipResult::diff_stats);

  m.def("eb_threshold", &eb_threshold, py::arg("stats"), py::arg("b0"), py::arg("alpha"));
  m.def("clt_threshold", &clt_threshold, py::arg("stats"), py::arg("alpha"));
  m.def("contains", &contains, py::arg("method"), py::arg("model"), py::arg("theta"),
        py::arg("theta_hat1"), py::arg("d2_rows"));

  py::class_<IntervalHull>(m, "IntervalHull")
      .def_readonly("lo", &IntervalHull::lo)
      .def_readonly("hi", &IntervalHull::hi)
      .def_readonly("width", &IntervalHull::width)
      .def_readonly("truncated_lo", &IntervalHull::truncated_lo)
      .def_readonly("truncated_hi", &IntervalHull::truncated_hi);
  m.def("interval_hull_1d", &interval_hull_1d, py::arg("method"), py::arg("model"),
        py::arg("theta_hat1"), py::arg("d2_rows"), py::arg("search_radius"),
        py::arg("grid_points") = 129);
  m.def("ray_widths", &ray_widths, py::arg("method"), py::arg("model"), py::arg("theta_hat1"),
        py::arg("d2_rows"), py::arg("directions"), py::arg("search_radius"),
        py::arg("grid_points") = 129);
  m.def("default_search_radius", &default_search_radius, py::arg("method"), py::arg("model"),
        py::arg("theta_hat1"), py::arg("d2_rows"));

  // simulation
  py::enum_<DgpKind>(m, "DgpKind")
      .value("LinearGaussian", DgpKind::LinearGaussian)
      .value("LinearLaplace", DgpKind::LinearLaplace)
      .value("HDMean", DgpKind::HDMean)
      .value("Manski2D", DgpKind::Manski2D)
      .value("QuantileHolder", DgpKind::QuantileHolder);

  py::class_<DgpSpec>(m, "DgpSpec")
      .def(py::init<>())
      .def_readwrite("kind", &DgpSpec::kind)
      .def_readwrite("n_total", &DgpSpec::n_total)
      .def_readwrite("dim", &DgpSpec::dim)
      .def_readwrite("cov_diag", &DgpSpec::cov_diag)
      .def_readwrite("beta", &DgpSpec::beta)
      .def_readwrite("gamma", &DgpSpec::gamma)
      .def_readwrite("manski_angle", &DgpSpec::manski_angle)
      .def("true_theta", &DgpSpec::true_theta);

  m.def(
      "generate",
      [](const DgpSpec& dgp, RngStream& stream) {
        GeneratedData g = generate(dgp, stream);
        return py::make_tuple(std::move(g.data), std::move(g.true_theta));
      },
      py::arg("dgp"), py::arg("stream"), "Returns (data, true_theta).");
  m.def("default_loss_model", &default_loss_model, py::arg("dgp"), py::arg("method"));
  m.def("initial_estimator", &initial_estimator, py::arg("dgp"), py::arg("d1_rows"));

  py::class_<MethodCoverage>(m, "MethodCoverage")
      .def_readonly("method", &MethodCoverage::method)
      .def_readonly("contained", &MethodCoverage::contained)
      .def_readonly("reps", &MethodCoverage::reps)
      .def_property_readonly("coverage", &MethodCoverage::coverage)
      .def_property_readonly("mc_stderr", &MethodCoverage::mc_stderr);

  py::class_<CoverageReport>(m, "CoverageReport")
      .def_readonly("dgp", &CoverageReport::dgp)
      .def_readonly("seed", &CoverageReport::seed)
      .def_readonly("reps", &CoverageReport::reps)
      .def_readonly("cells", &CoverageReport::cells);

  py::class_<CoverageConfig>(m, "CoverageConfig")
      .def(py::init<>())
      .def_readwrite("dgp", &CoverageConfig::dgp)
      .def_readwrite("methods", &CoverageConfig::methods)
      .def_readwrite("reps", &CoverageConfig::reps)
      .def_readwrite("seed", &CoverageConfig::seed)
      .def_readwrite("split_ratio", &CoverageConfig::split_ratio);

  m.def("run_coverage", &run_coverage, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_coverage_range", &run_coverage_range, py::arg("config"), py::arg("rep_begin"),
        py::arg("rep_end"), py::call_guard<py::gil_scoped_release>());
  m.def("merge_reports", &merge_reports, py::arg("a"), py::arg("b"));

  py::class_<WidthCell>(m, "WidthCell")
      .def_readonly("n_total", &WidthCell::n_total)
      .def_readonly("median_width", &WidthCell::median_width)
      .def_readonly("iqr", &WidthCell::iqr)
      .def_readonly("truncated", &WidthCell::truncated)
      .def_readonly("reps", &WidthCell::reps);

  py::class_<WidthReport>(m, "WidthReport")
      .def_readonly("dgp", &WidthReport::dgp)
      .def_readonly("method", &WidthReport::method)
      .def_readonly("seed", &WidthReport::seed)
      .def_readonly("cells", &WidthReport::cells);

  py::class_<WidthConfig>(m, "WidthConfig")
      .def(py::init<>())
      .def_readwrite("dgp", &WidthConfig::dgp)
      .def_readwrite("method", &WidthConfig::method)
      .def_readwrite("n_values", &WidthConfig::n_values)
      .def_readwrite("reps", &WidthConfig::reps)
      .def_readwrite("seed", &WidthConfig::seed)
      .def_readwrite("split_ratio", &WidthConfig::split_ratio)
      .def_readwrite("grid_points", &WidthConfig::grid_points)
      .def_readwrite("search_radius", &WidthConfig::search_radius);

  m.def("run_width", &run_width, py::arg("config"), py::call_guard<py::gil_scoped_release>());

  // presets
  m.def("preset_names", [] { return preset_names(); });
  m.def(
      "run_preset",
      [](const std::string& name, std::uint64_t seed, int reps, const std::string& out_dir) {
        PresetOutput out = run_preset(name, seed, reps, out_dir);
        return py::make_tuple(out.csv_paths, out.svg_paths);
      },
      py::arg("name"), py::arg("seed") = 0, py::arg("reps") = 1000, py::arg("out_dir") = ".",
      "Returns (csv_paths, svg_paths).");
}
