#pragma once

// Multipole analysis of a current density J: vector-harmonic channel
// projections, magnetic/transverse-electric/Coulomb form factors, toroid
// moments, and the exact split E_lm(k^2) = Qdot_lm(0) + k^2 T_lm(k^2).
//
// Conventions (all fixed here, documented in the README):
//
//   a_{l,lp}(k) = int j_lp(kr) conj(Y_{l,lp,m}) . J d3r        (projection)
//
//   Qdot_lm(k^2) = (2l+1)!! k^{1-l} [ sqrt(l) a_{l,l-1}
//                                   - sqrt(l+1) a_{l,l+1} ] / sqrt(2l+1)
//   E_lm(k^2)    = (2l+1)!! k^{1-l} sqrt(l/(l+1)) [ sqrt(l+1) a_{l,l-1}
//                                   + sqrt(l) a_{l,l+1} ] / sqrt(2l+1)
//   M_lm(k^2)    = (2l+1)!! k^{-l} a_{l,l}
//
// The 2x2 channel mixing matrix (2l+1)^{-1/2} [[sqrt(l+1), sqrt(l)],
// [sqrt(l), -sqrt(l+1)]] is orthogonal with determinant -1; the k-power
// prefactors are calibrated once so that lim_{k->0} E_lm = Qdot_lm(0) =
// int grad(r^l conj(Y_lm)) . J d3r exactly, and Qdot_lm(k^2) coincides
// with the continuity-equation Coulomb form factor.
//
// Toroid moments follow the channel weights [1, 2 sqrt(l/(l+1))/(2l+3)]
// verbatim, with the overall prefactor -(1/2) sqrt(l/(2l+1)) fixed by the
// same calibration (this equals the conventional sqrt(pi l)/(2l+1) form
// times sqrt(2l+1)/(2 sqrt(pi))), so that lim_{k->0} (E - Qdot)/k^2 =
// T_lm^{(0)} holds identically:
//
//   T_lm^{(2n)} = -(1/2) sqrt(l/(2l+1)) int r^{l+2n+1}
//                 [ conj(Y_{l,l-1,m}) + 2 sqrt(l/(l+1))/(2l+3)
//                   conj(Y_{l,l+1,m}) ] . J d3r

#include <map>
#include <optional>
#include <ostream>
#include <tuple>
#include <vector>

#include "vsh/grid.hpp"

namespace vsh {

struct FormFactorTable {
    int l = 1, m = 0;
    std::vector<double> k_grid;
    std::vector<cplx> M, E, Qdot;
};

struct MomentSet {
    std::map<std::pair<int, int>, cplx> qdot0;                 // (l, m)
    std::map<std::tuple<int, int, int>, cplx> qdot_radii;      // (l, m, n)
    std::map<std::tuple<int, int, int>, cplx> toroid;          // (l, m, n)
    std::map<std::pair<int, int>, double> siegert_residual;    // (l, m)
};

enum class SourceKind { GaussianDipole, MagneticLoop, ToroidalSolenoid };

struct SourceSpec {
    SourceKind kind = SourceKind::GaussianDipole;
    double sigma = 1.0;       // Gaussian width / extra smoothing
    double torus_R = 1.0;     // major radius (loop radius for MagneticLoop)
    double torus_a = 0.4;     // tube width
    double amplitude = 1.0;
    std::array<double, 3> center{0.0, 0.0, 0.0}; // GaussianDipole only
};

struct SourceFields {
    VectorField current;
    std::optional<ScalarField> charge_rate; // -div J, analytic where known
    double support_leak = 0.0;
    bool leak_warning = false;
};

SourceFields make_source(const SourceSpec& spec, const GridPtr& grid);

// int j_lp(kr) conj(Y_{l,lp,m}) . J d3r; throws std::domain_error unless
// lp is one of l-1, l, l+1 (and l >= 1)
cplx channel_projection(const VectorField& J, int l, int m, int lp, double k);

FormFactorTable form_factors(const VectorField& J, int l, int m,
                             std::vector<double> k_grid);

// Qdot_lm(0) = int grad(r^l conj(Y_lm)) . J d3r
cplx qdot_moment(const VectorField& J, int l, int m);
// mean 2n-power radius coefficient: Qdot(k^2) = sum_n k^{2n}/n! Qdot^{(2n)}
cplx qdot_radius_moment(const VectorField& J, int l, int m, int n);
// the k-dependent Coulomb form factor at one wavenumber
cplx qdot_form_factor(const VectorField& J, int l, int m, double k);

cplx toroid_moment(const VectorField& J, int l, int m, int n);

struct SiegertResult {
    cplx qdot0;
    std::vector<double> k_grid;
    std::vector<cplx> toroid_of_k2;  // (E(k^2) - Qdot(0)) / k^2
    cplx toroid_limit;               // even-polynomial extrapolation to k=0
    cplx toroid_printed;             // toroid_moment(l, m, 0)
    double residual;                 // |limit - printed| / scale
};

// Throws FitError when the grid has too few points for the degree-3 even
// fit or does not reach k r_max <~ 0.3.
SiegertResult siegert_split(const VectorField& J, int l, int m,
                            std::vector<double> k_grid);

struct LongWavelengthReport {
    int l = 1, m = 0;
    double k = 0.0;
    double residual_k = 0.0;       // |curl L j_l Y - (l+1) grad j_l Y| rel.
    double residual_half_k = 0.0;
    double exponent = 0.0;         // fitted power of the residual in k
    double leading_coeff_ratio = 0.0; // measured / (l+1) k^l/(2l+1)!! grad r^l Y
};

LongWavelengthReport long_wavelength_check(int l, int m, double k,
                                           const GridPtr& grid);

// scale int r^p |J| d3r used to normalize moments of different degree
double source_scale(const VectorField& J, int p);

// CSV: columns l,m,n_or_k,re,im,quantity; header fixed; 17 significant
// digits; LF line endings
void write_csv_header(std::ostream& os);
void append_form_factors_csv(std::ostream& os, const FormFactorTable& t);
void append_moments_csv(std::ostream& os, const MomentSet& ms);
void write_form_factors_csv(std::ostream& os,
                            const std::vector<FormFactorTable>& tables);
void write_moments_csv(std::ostream& os, const MomentSet& ms);

} // namespace vsh
