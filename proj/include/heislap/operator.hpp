#pragma once

#include "heislap/grid.hpp"
#include "heislap/sparse.hpp"

namespace heislap {

// Discretization of the quadratic form  a[u] = int |X1 u|^2 + |X2 u|^2
// with X1 = d_1 + (x2/2) d_3 and X2 = d_2 - (x1/2) d_3, by forward
// differences of the zero-extended function (Dirichlet). `factor` is the
// sparse map G stacking the X1 difference rows then the X2 rows, one row per
// lattice base point whose stencil reaches a node (boundary links included);
// `matrix` = G^T G, so it is symmetric PSD unconditionally and
// u^T A u = |G u|^2 exactly.
struct HeisenbergForm {
  SparseSymMatrix matrix;
  SparseMatrix factor;
};

HeisenbergForm assemble_heisenberg(const Grid3D& grid);

// Vector potential choice for the 2D magnetic Laplacian. `symmetric` is
// A(x') = (-x2, x1)/2; `landau_x` is the gauge-shifted A + grad(x1 x2 / 2)
// = (0, x1), unitarily equivalent on the lattice.
enum class MagneticGauge { symmetric, landau_x };

// Link-phase (Peierls) discretization of (i grad + B A)^2 on the square
// (-L, L)^2 with Dirichlet boundary, spacing h. The complex Hermitian
// operator is returned realified as a real symmetric matrix of doubled
// dimension; every true eigenvalue appears twice. Rejects B*h^2 > 0.5
// (flux per plaquette outside the discretization regime).
SparseSymMatrix assemble_magnetic2d(double b_field, double half_width, double h,
                                    MagneticGauge gauge = MagneticGauge::symmetric);

}  // namespace heislap
