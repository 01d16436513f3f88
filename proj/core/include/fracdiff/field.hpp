#pragma once

#include "fracdiff/fracops.hpp"
#include "fracdiff/grid.hpp"

namespace fracdiff {

struct VectorField {
  Grid fx;
  Grid fy;
};

/// Index into [0, n) after mirror extension with the edge sample repeated
/// (... b a | a b c | c b ...). Any integer is accepted.
int reflect_index(int i, int n) noexcept;

/// Symmetric extension by `margin` on every side. Realizes the zero-flux
/// boundary for the nonlocal stencils.
Grid pad_reflect(const Grid& u, int margin);

/// Two-sided fractional derivative along x (each row) and y (each column).
/// Lines are reflect-padded by kernel.margin() before the stencil runs.
Grid frac_derivative_x(const Grid& u, const TwoSidedKernel& kernel, Exec exec = {});
Grid frac_derivative_y(const Grid& u, const TwoSidedKernel& kernel, Exec exec = {});

VectorField frac_gradient(const Grid& u, const TwoSidedKernel& kernel, Exec exec = {});

/// D_x fx + D_y fy.
Grid frac_divergence(const VectorField& v, const TwoSidedKernel& kernel, Exec exec = {});

/// sqrt(fx^2 + fy^2) of frac_gradient(u, kernel).
Grid gradient_magnitude(const Grid& u, const TwoSidedKernel& kernel, Exec exec = {});

/// Pointwise magnitude of a vector field.
Grid magnitude(const VectorField& v);

/// |grad u| with integer-order central differences on the reflect-padded grid.
Grid central_gradient_magnitude(const Grid& u);

}  // namespace fracdiff
