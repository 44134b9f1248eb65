#pragma once

// Differential and integral operators on spectral fields. All act per
// (l, m) channel through the radial differentiation matrix, except the
// pointwise ones (coordinate multiplication, Cartesian component
// extraction), which go through sample space and therefore raise the
// effective band limit by one; callers keep headroom below l_max.
//
// Channel calculus used throughout, for V = a Y rhat + b Psi + c Phi with
// Psi = grad_S Y/sqrt(k), Phi = L Y/sqrt(k), k = l(l+1):
//
//   grad f      : a = f',            b = sqrt(k) f / r,     c = 0
//   div V       : (d/dr + 2/r) a - sqrt(k) b / r
//   curl V      : a' = sqrt(k) c / r
//                 b' = c' + c/r
//                 c' = sqrt(k) a / r - (b' + b/r)
//   L f         : c = sqrt(k) f          (L = -r x grad, as printed)
//   M f         : b = -sqrt(k) r f       (M = -r x L)
//   r x V       : b' = r c,  c' = -r b
//   r . V       : scalar r a
//
// The inverse Laplacian uses the free-space radial Green function per
// degree; the inverse of L^2 is the spectral division by -1/(l(l+1)) with
// the l = 0 channel excluded by a gauge precondition.

#include "vsh/grid.hpp"

namespace vsh {

ScalarField radial_derivative(const ScalarField& f);

ScalarField divergence(const VectorField& v);
VectorField gradient(const ScalarField& f);
VectorField curl(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
// componentwise scalar Laplacian through Cartesian extraction; independent
// of the grad div - curl curl route by construction
VectorField laplacian_vector(const VectorField& v);

VectorField apply_L(const ScalarField& f);
VectorField apply_N(const ScalarField& f); // curl(L f)
VectorField apply_M(const ScalarField& f); // -r x (L f)

ScalarField dot_with_r(const VectorField& v);
VectorField cross_with_r(const VectorField& v); // r x V
ScalarField multiply_radial_power(const ScalarField& f, int p); // r^p f
VectorField multiply_radial_power(const VectorField& f, int p);
// (r . grad) f = r d/dr f
ScalarField radial_scaling(const ScalarField& f);

// pointwise operations (sample-space round trip)
ScalarField multiply_coordinate(const ScalarField& f, int axis);
ScalarField extract_component(const VectorField& v, int axis);
VectorField vector_from_components(const ScalarField& x, const ScalarField& y,
                                   const ScalarField& z);
VectorField multiply_position(const ScalarField& f); // (x f, y f, z f)

struct InverseLaplacianResult {
    ScalarField value;
    double support_leak = 0.0;  // boundary coefficient ratio of the input
    bool leak_warning = false;  // true if above the compact-support bound
};

// Free-space inverse Laplacian, g = -int f(r') / (4 pi |r - r'|) d3r',
// realized per (l,m) by the radial Green kernel. Input should be compactly
// supported inside the grid; a leak above `leak_tol` only sets the warning
// flag, the value is still returned.
InverseLaplacianResult inverse_laplacian(const ScalarField& f,
                                         double leak_tol = 1e-12);
// convenience: value only
ScalarField inverse_laplacian_value(const ScalarField& f);

// Spectral inverse of L^2: multiply by -1/(l(l+1)) for l >= 1, zero out
// l = 0. Throws GaugeViolationError when the l = 0 content of f exceeds
// gauge_tol * max(|f|, reference_norm); the reference keeps the check
// meaningful when f itself is numerically zero.
ScalarField inverse_L2(const ScalarField& f, double gauge_tol = 1e-9,
                       double reference_norm = 0.0);

// evaluate the (l,m) radial profile at an arbitrary radius
cplx profile_value(const ScalarField& f, int h, double r);

} // namespace vsh
