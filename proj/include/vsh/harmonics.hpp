#pragma once

// Scalar and vector spherical harmonics, Legendre polynomials and spherical
// Bessel functions. Everything downstream depends on the conventions fixed
// here:
//
//   * Y_lm are complex orthonormal harmonics with the Condon-Shortley phase,
//       Y_lm(theta,phi) = Pbar_lm(cos theta) e^{i m phi},
//     where Pbar includes the full normalization sqrt((2l+1)/4pi (l-m)!/(l+m)!)
//     and the (-1)^m phase. Conjugation symmetry: Y_{l,-m} = (-1)^m conj(Y_lm).
//
//   * The angular operator is the anti-Hermitian L = -r x grad, with
//     L^2 Y_lm = -l(l+1) Y_lm. (The Hermitian physics operator is i L.)
//
//   * Vector harmonics are built from derivative relations, no coupling
//     tables:
//       Y_{l,l-1,m} =  grad(r^l Y_lm) r^{1-l} / sqrt(l(2l+1))
//       Y_{l,l,  m} =  L Y_lm / sqrt(l(l+1))
//       Y_{l,l+1,m} = -grad(r^{-l-1} Y_lm) r^{l+2} / sqrt((l+1)(2l+1))
//     The sign of the l+1 channel is chosen so that the gradient of a regular
//     radial profile expands with a minus sign on that channel,
//       grad(f_l Y_lm) = (2l+1)^{-1/2} [ sqrt(l) f_{l-1} Y_{l,l-1,m}
//                                      - sqrt(l+1) f_{l+1} Y_{l,l+1,m} ].
//     All three channels are unit-normalized and mutually orthogonal under
//     the solid-angle Hermitian inner product.

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace vsh {

using cplx = std::complex<double>;

struct HarmonicIndex {
    int l = 0;
    int m = 0;

    [[nodiscard]] bool valid() const { return l >= 0 && m >= -l && m <= l; }
    // Flat index h = l(l+1)+m, a bijection onto 0..(l_max+1)^2-1.
    [[nodiscard]] int flat() const { return l * (l + 1) + m; }
    static HarmonicIndex from_flat(int h);
};

struct VectorHarmonicIndex {
    int l = 1;       // total degree, >= 1
    int lp = 0;      // orbital degree, in {l-1, l, l+1}
    int m = 0;

    [[nodiscard]] bool valid() const {
        return l >= 1 && m >= -l && m <= l &&
               (lp == l - 1 || lp == l || lp == l + 1);
    }
};

// (2l+1)!! as a double.
double double_factorial_odd(int l);

// Legendre polynomial P_l(x), |x| <= 1, P_l(1) = 1.
double eval_legendre(int l, double x);

// Fully normalized associated Legendre Pbar_lm(cos theta) for all 0<=m<=l<=l_max
// at a single point, written to out[l*(l+1)/2 + m] (triangular layout).
// x = cos(theta), s = sin(theta) >= 0.
void normalized_plm_row(int l_max, double x, double s, std::span<double> out);
inline int plm_tri_size(int l_max) { return (l_max + 1) * (l_max + 2) / 2; }
inline int plm_tri_index(int l, int m) { return l * (l + 1) / 2 + m; }

// Orthonormal Y_lm(theta, phi). Throws std::domain_error on |m| > l or
// theta outside [0, pi].
cplx eval_ylm(HarmonicIndex idx, double theta, double phi);

// L Y_lm = -(r x grad) Y_lm, Cartesian components. Regular everywhere
// (evaluated by the ladder relations, no 1/sin(theta)).
std::array<cplx, 3> eval_l_ylm(HarmonicIndex idx, double theta, double phi);

// Vector spherical harmonic Y_{l,lp,m}, Cartesian components.
std::array<cplx, 3> eval_vector_harmonic(VectorHarmonicIndex idx, double theta,
                                         double phi);

// Regular spherical Bessel function j_l(x), x >= 0. Series for small x,
// downward recurrence below the turning point, upward above it.
double spherical_bessel_j(int l, double x);

} // namespace vsh
