#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>

#include "ogstv/image.hpp"
#include "ogstv/kernel.hpp"
#include "ogstv/metrics.hpp"
#include "ogstv/ogs.hpp"
#include "ogstv/operators.hpp"
#include "ogstv/solver.hpp"

namespace py = pybind11;
using namespace ogstv;

namespace {

Image image_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1))
    throw py::value_error("expected a square 2D array");
  const int n = static_cast<int>(a.shape(0));
  Image img(n);
  auto r = a.unchecked<2>();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) img.at(i, j) = r(i, j);
  return img;
}

py::array_t<double> array_from_image(const Image& img) {
  const int n = img.side();
  py::array_t<double> a({n, n});
  auto w = a.mutable_unchecked<2>();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = img.at(i, j);
  return a;
}

using NpImage = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::array_t<double> kernel_weights(const Kernel& k) {
  py::array_t<double> a({k.rows, k.cols});
  auto w = a.mutable_unchecked<2>();
  for (int r = 0; r < k.rows; ++r)
    for (int c = 0; c < k.cols; ++c) w(r, c) = k.at(r, c);
  return a;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Group-sparse total variation image restoration";

  py::class_<Kernel>(m, "Kernel")
      .def_readonly("rows", &Kernel::rows)
      .def_readonly("cols", &Kernel::cols)
      .def_property_readonly("anchor",
                             [](const Kernel& k) { return py::make_tuple(k.anchor_row, k.anchor_col); })
      .def_property_readonly("weights", &kernel_weights)
      .def("__repr__", [](const Kernel& k) {
        return "<Kernel " + std::to_string(k.rows) + "x" + std::to_string(k.cols) + ">";
      });

  m.def("identity_kernel", &identity_kernel);
  m.def("gaussian_kernel", &make_gaussian_kernel, py::arg("size"), py::arg("std"));
  m.def("average_kernel", &make_average_kernel, py::arg("size"));
  m.def("load_kernel", &load_kernel, py::arg("path"));
  m.def("save_kernel", &save_kernel, py::arg("kernel"), py::arg("path"));

  m.def("load_pgm", [](const std::string& path) { return array_from_image(load_pgm(path)); },
        py::arg("path"));
  m.def("save_pgm",
        [](const NpImage& a, const std::string& path) { save_pgm(image_from_array(a), path); },
        py::arg("image"), py::arg("path"));

  m.def("project_box",
        [](const NpImage& a, double lo, double hi) {
          return array_from_image(project_box(image_from_array(a), BoxBounds{lo, hi}));
        },
        py::arg("image"), py::arg("lo") = 0.0, py::arg("hi") = 255.0);

  m.def("grad_x", [](const NpImage& a) { return array_from_image(grad_x(image_from_array(a))); });
  m.def("grad_y", [](const NpImage& a) { return array_from_image(grad_y(image_from_array(a))); });
  m.def("grad_x_adjoint",
        [](const NpImage& a) { return array_from_image(grad_x_adjoint(image_from_array(a))); });
  m.def("grad_y_adjoint",
        [](const NpImage& a) { return array_from_image(grad_y_adjoint(image_from_array(a))); });

  m.def("apply_psf",
        [](const NpImage& a, const Kernel& k) {
          return array_from_image(apply_psf_periodic(image_from_array(a), k));
        },
        py::arg("image"), py::arg("kernel"));

  m.def("degrade",
        [](const NpImage& a, const Kernel& k, double noise_std, std::uint64_t seed) {
          return array_from_image(degrade(image_from_array(a), k, noise_std, seed));
        },
        py::arg("image"), py::arg("kernel"), py::arg("noise_std"), py::arg("seed") = 0);

  m.def("ogs_value",
        [](const NpImage& a, int group_size) {
          return ogs_value(image_from_array(a), GroupSpec{group_size});
        },
        py::arg("v"), py::arg("group_size") = 3);

  m.def("ogs_prox",
        [](const NpImage& v0, double mu, int group_size, int iterations, double inner_tol,
           double eps_floor) {
          return array_from_image(ogs_prox_mm(image_from_array(v0), GroupSpec{group_size},
                                              MmConfig{mu, iterations, inner_tol, eps_floor}));
        },
        py::arg("v0"), py::arg("mu"), py::arg("group_size") = 3, py::arg("iterations") = 5,
        py::arg("inner_tol") = 0.0, py::arg("eps_floor") = 1e-12);

  m.def("psnr",
        [](const NpImage& ref, const NpImage& est, double max_val) {
          return psnr(image_from_array(ref), image_from_array(est), max_val);
        },
        py::arg("reference"), py::arg("estimate"), py::arg("max_val") = 255.0);
  m.def("rel_err",
        [](const NpImage& ref, const NpImage& est) {
          return rel_err(image_from_array(ref), image_from_array(est));
        },
        py::arg("reference"), py::arg("estimate"));
  m.def("bsnr",
        [](const NpImage& g, const NpImage& eta) {
          return bsnr(image_from_array(g), image_from_array(eta));
        },
        py::arg("g"), py::arg("eta"));
  m.def("noise_std_for_bsnr",
        [](const NpImage& blurred, double target) {
          return noise_std_for_bsnr(image_from_array(blurred), target);
        },
        py::arg("blurred"), py::arg("target_bsnr_db"));

  py::class_<LogRecord>(m, "LogRecord")
      .def_readonly("iter", &LogRecord::iter)
      .def_readonly("objective", &LogRecord::objective)
      .def_readonly("rel_change", &LogRecord::rel_change)
      .def_readonly("res_vx", &LogRecord::res_vx)
      .def_readonly("res_vy", &LogRecord::res_vy)
      .def_readonly("res_z", &LogRecord::res_z)
      .def_readonly("psnr_db", &LogRecord::psnr_db)
      .def_readonly("time_ms", &LogRecord::time_ms);

  py::class_<ConvergenceLog>(m, "ConvergenceLog")
      .def_readonly("records", &ConvergenceLog::records)
      .def_property_readonly(
          "stopped_by_tolerance",
          [](const ConvergenceLog& log) { return log.reason == StopReason::tolerance; })
      .def("to_csv", [](const ConvergenceLog& log) { return to_csv(log); });

  m.def(
      "restore",
      [](const NpImage& g, const Kernel& k, double alpha, py::object sigma, int group_size,
         int inner_iterations, double eps_outer, int max_iter, std::pair<double, double> box,
         double dual_step, py::object reference, bool collect_timing) {
        SolverConfig cfg(alpha);
        if (!sigma.is_none()) cfg.sigma = sigma.cast<double>();
        cfg.group = GroupSpec{group_size};
        cfg.inner_iterations = inner_iterations;
        cfg.eps_outer = eps_outer;
        cfg.max_iter = max_iter;
        cfg.box = BoxBounds{box.first, box.second};
        cfg.dual_step = dual_step;
        cfg.collect_timing = collect_timing;
        Image ref;
        if (!reference.is_none()) {
          ref = image_from_array(reference.cast<NpImage>());
          cfg.track_psnr_against = &ref;
        }
        RestoreResult result = restore(image_from_array(g), k, cfg);
        return py::make_tuple(array_from_image(result.f), std::move(result.log));
      },
      py::arg("g"), py::arg("kernel"), py::arg("alpha"), py::arg("sigma") = py::none(),
      py::arg("group_size") = 3, py::arg("inner_iterations") = 5, py::arg("eps_outer") = 1e-5,
      py::arg("max_iter") = 500, py::arg("box") = std::pair<double, double>(0.0, 255.0),
      py::arg("dual_step") = 1.0, py::arg("reference") = py::none(),
      py::arg("collect_timing") = false);
}
