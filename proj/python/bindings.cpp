#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heislap/bounds.hpp"
#include "heislap/eigensolve.hpp"
#include "heislap/errors.hpp"
#include "heislap/geometry.hpp"
#include "heislap/grid.hpp"
#include "heislap/hardy.hpp"
#include "heislap/operator.hpp"

namespace py = pybind11;
using namespace heislap;

namespace {

Polygon make_polygon(const std::vector<std::pair<double, double>>& pts) {
  std::vector<Point2> verts;
  verts.reserve(pts.size());
  for (auto [x, y] : pts) verts.push_back({x, y});
  return Polygon(std::move(verts));
}

DenseSymMatrix make_dense(const std::vector<std::vector<double>>& rows) {
  const int n = int(rows.size());
  DenseSymMatrix d(n);
  for (int i = 0; i < n; ++i) {
    if (int(rows[i].size()) != n)
      throw config_error("dense matrix: rows must all have length dim");
    for (int j = 0; j < n; ++j) d.at(i, j) = rows[i][j];
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(heislap, m) {
  m.doc() = "Dirichlet Heisenberg Laplacian on cylinders: discretization, "
            "eigensolvers, geometric functionals and eigenvalue-sum bounds";

  py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<convergence_error>(m, "ConvergenceError", PyExc_RuntimeError);

  py::class_<Polygon>(m, "Polygon")
      .def(py::init(&make_polygon), py::arg("vertices"),
           "Counterclockwise simple polygon from [(x, y), ...]")
      .def_property_readonly("area", &Polygon::area)
      .def_property_readonly("convex", &Polygon::convex)
      .def("contains", [](const Polygon& p, double x, double y) {
        return p.contains({x, y});
      })
      .def("boundary_distance", [](const Polygon& p, double x, double y) {
        return p.boundary_distance({x, y});
      });

  py::class_<DistanceField>(m, "DistanceField")
      .def(py::init<Polygon, double>(), py::arg("polygon"), py::arg("h"))
      .def_property_readonly("h", &DistanceField::h)
      .def_property_readonly("interior_count", &DistanceField::interior_count)
      .def_property_readonly("inradius",
                             [](const DistanceField& f) { return inradius(f); })
      .def("sublevel_area", [](const DistanceField& f, double beta) {
        return sublevel_area(f, beta);
      });

  py::class_<GeometrySummary>(m, "GeometrySummary")
      .def_readonly("area", &GeometrySummary::area_omega)
      .def_readonly("inradius", &GeometrySummary::inradius)
      .def_readonly("l_omega", &GeometrySummary::l_omega)
      .def_readonly("height", &GeometrySummary::height)
      .def_readonly("volume", &GeometrySummary::volume_Omega)
      .def_readonly("beta_star", &GeometrySummary::beta_star);

  m.def("l_omega",
        [](const DistanceField& f, double height, int n_beta) {
          LayerQuotient q = l_omega(f, height, n_beta);
          return std::make_pair(q.value, q.beta_star);
        },
        py::arg("field"), py::arg("height"), py::arg("n_beta") = 64,
        "(l_omega, beta_star) for the cylinder of the given height");
  m.def("summarize_geometry", &summarize_geometry, py::arg("field"),
        py::arg("height"), py::arg("n_beta") = 64);

  py::class_<HardyEstimate>(m, "HardyEstimate")
      .def_readonly("c_est", &HardyEstimate::c_est)
      .def_readonly("mesh", &HardyEstimate::mesh)
      .def_readonly("rayleigh_residual", &HardyEstimate::rayleigh_residual)
      .def_readonly("refinement_history", &HardyEstimate::refinement_history)
      .def_readonly("iterations", &HardyEstimate::iterations);

  m.def("estimate_hardy_constant", &estimate_hardy_constant, py::arg("field"),
        py::arg("tol") = 1e-8, py::arg("max_iter") = 10000,
        "Discrete lower estimate of the Hardy constant on the cross-section");
  m.def("estimate_hardy_refined", &estimate_hardy_refined, py::arg("polygon"),
        py::arg("h0"), py::arg("levels"), py::arg("tol") = 1e-8,
        py::arg("max_iter") = 10000);

  py::enum_<CMode>(m, "CMode")
      .value("measured", CMode::measured)
      .value("convex", CMode::convex)
      .value("worst_case", CMode::worst_case);
  m.def("hardy_bound_used", &hardy_bound_used, py::arg("estimate"), py::arg("mode"));

  py::class_<Grid3D>(m, "Grid3D")
      .def(py::init<Polygon, double, double, double, double>(), py::arg("polygon"),
           py::arg("a"), py::arg("b"), py::arg("h_plane"), py::arg("h_axial"))
      .def_property_readonly("size", &Grid3D::size)
      .def_property_readonly("cell_volume", &Grid3D::cell_volume)
      .def_property_readonly("volume_estimate", &Grid3D::volume_estimate);

  py::class_<SparseSymMatrix>(m, "SparseSymMatrix")
      .def_property_readonly("dim", &SparseSymMatrix::dim)
      .def_property_readonly("nnz", &SparseSymMatrix::nnz)
      .def("apply",
           [](const SparseSymMatrix& a, const std::vector<double>& x) {
             return a.apply(x);
           })
      .def("quadratic_form",
           [](const SparseSymMatrix& a, const std::vector<double>& x) {
             if (int(x.size()) != a.dim())
               throw config_error("quadratic_form: size mismatch");
             return a.quadratic_form(x.data());
           })
      .def("to_dense", [](const SparseSymMatrix& a) {
        DenseSymMatrix d = dense_from_sparse(a);
        std::vector<std::vector<double>> rows(d.dim());
        for (int i = 0; i < d.dim(); ++i) {
          rows[i].resize(d.dim());
          for (int j = 0; j < d.dim(); ++j) rows[i][j] = d.at(i, j);
        }
        return rows;
      });

  py::class_<SparseMatrix>(m, "SparseMatrix")
      .def_property_readonly("rows", &SparseMatrix::rows)
      .def_property_readonly("cols", &SparseMatrix::cols)
      .def("apply", [](const SparseMatrix& g, const std::vector<double>& x) {
        return g.apply(x);
      });

  py::class_<HeisenbergForm>(m, "HeisenbergForm")
      .def_readonly("matrix", &HeisenbergForm::matrix)
      .def_readonly("factor", &HeisenbergForm::factor);

  m.def("assemble_heisenberg", &assemble_heisenberg, py::arg("grid"));

  py::enum_<MagneticGauge>(m, "MagneticGauge")
      .value("symmetric", MagneticGauge::symmetric)
      .value("landau_x", MagneticGauge::landau_x);
  m.def("assemble_magnetic2d", &assemble_magnetic2d, py::arg("b_field"),
        py::arg("half_width"), py::arg("h"),
        py::arg("gauge") = MagneticGauge::symmetric);

  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("eigenvalues", &Spectrum::eigenvalues)
      .def_readonly("residuals", &Spectrum::residuals)
      .def_readonly("vectors", &Spectrum::vectors)
      .def_readonly("iterations", &Spectrum::iterations)
      .def_property_readonly("converged", &Spectrum::all_converged);

  m.def("lobpcg_smallest", &lobpcg_smallest, py::arg("matrix"), py::arg("m"),
        py::arg("tol") = 1e-8, py::arg("max_iter") = 600, py::arg("seed") = 1234,
        py::arg("keep_vectors") = true);
  m.def("dense_jacobi_all",
        [](const std::vector<std::vector<double>>& rows, bool keep_vectors) {
          return dense_jacobi_all(make_dense(rows), keep_vectors);
        },
        py::arg("matrix"), py::arg("keep_vectors") = false);
  m.def("dense_jacobi_all",
        [](const SparseSymMatrix& a, bool keep_vectors) {
          return dense_jacobi_all(dense_from_sparse(a), keep_vectors);
        },
        py::arg("matrix"), py::arg("keep_vectors") = false);

  m.def("riesz_mean",
        [](const std::vector<double>& evs, double lam) {
          return riesz_mean(std::span<const double>(evs), lam);
        },
        py::arg("eigenvalues"), py::arg("lam"));
  m.def("berezin_rhs", &berezin_rhs, py::arg("volume"), py::arg("lam"));
  m.def("theorem_rhs", &theorem_rhs, py::arg("volume"), py::arg("l"), py::arg("c"),
        py::arg("lam"));
  m.def("corollary_rhs", &corollary_rhs, py::arg("volume"), py::arg("inradius"),
        py::arg("lam"));
  m.def("leading_term_oracle", &leading_term_oracle, py::arg("volume"),
        py::arg("lam"), py::arg("k_max"));
  m.def("weyl_ratio",
        [](const std::vector<double>& evs, double volume, double lam) {
          return weyl_ratio(std::span<const double>(evs), volume, lam);
        },
        py::arg("eigenvalues"), py::arg("volume"), py::arg("lam"));

  m.def("check_cylinder_hardy",
        [](const std::vector<double>& v, double lam, const DistanceField& field,
           const Grid3D& grid, double c) {
          PairCheck pc = check_cylinder_hardy(v, lam, field, grid, c);
          return std::make_pair(pc.lhs, pc.rhs);
        },
        py::arg("v"), py::arg("lam"), py::arg("field"), py::arg("grid"),
        py::arg("c"));
  m.def("check_boundary_estimate",
        [](const std::vector<double>& v, double lam, const DistanceField& field,
           const Grid3D& grid, double c, double beta) {
          PairCheck pc = check_boundary_estimate(v, lam, field, grid, c, beta);
          return std::make_pair(pc.lhs, pc.rhs);
        },
        py::arg("v"), py::arg("lam"), py::arg("field"), py::arg("grid"),
        py::arg("c"), py::arg("beta"));

  m.attr("__version__") = "0.1.0";
}
