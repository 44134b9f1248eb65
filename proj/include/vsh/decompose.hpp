#pragma once

// Helmholtz split, harmonic gauge fields, and the Neumann-Debye
// scalarization with its explicit inversion:
//
//   V = V_par + V_perp = grad lapinv div V - curl lapinv curl V
//   V = grad phi + L psi + N chi
//     phi = lapinv div V            (shifted so the l=0 mean vanishes at R)
//     psi = L2inv (L . V)           (cross-checked against -L2inv (r . curl V))
//     chi = L2inv [(r d/dr) phi - r . V]
//
// The gauge fields V_N = -curl L (r^l | r^{-l-1}) Y_lm are divergence- and
// curl-free and evade the Helmholtz projectors; they are built by two
// independent routes (curl-of-L and gradient form) that must agree.

#include "vsh/grid.hpp"

namespace vsh {

struct HelmholtzParts {
    VectorField longitudinal; // curl-free part
    VectorField transverse;   // divergence-free part
    double support_leak = 0.0;
    bool leak_warning = false;
    double reconstruction_residual = 0.0; // |V - Vpar - Vperp| / |V|
};

HelmholtzParts helmholtz(const VectorField& v, double leak_tol = 1e-12);

enum class GaugeBranch { Regular, Singular };

struct GaugeFieldSpec {
    int l = 1;
    int m = 0;
    GaugeBranch branch = GaugeBranch::Regular;
    cplx coefficient{1.0};
};

struct GaugeFieldResult {
    VectorField field;       // the gradient-form construction
    double route_mismatch;   // vs the curl-L construction, relative
    double div_norm;         // |div V_N| / |V_N|
    double curl_norm;        // |curl V_N| / |V_N|
};

GaugeFieldResult gauge_field(const GaugeFieldSpec& spec, const GridPtr& grid);

struct DebyePotentials {
    ScalarField phi, psi, chi;
};

struct DebyeDiagnostics {
    double psi_route_mismatch = 0.0;
    double support_leak = 0.0;
    bool leak_warning = false;
};

// Throws GaugeViolationError (propagated from inverse_L2) and FitError when
// the two printed psi routes disagree beyond route_tol.
DebyePotentials debye_decompose(const VectorField& v,
                                DebyeDiagnostics* diag = nullptr,
                                double route_tol = 1e-9,
                                double gauge_tol = 1e-9);

VectorField debye_synthesize(const DebyePotentials& p);

struct TransportReport {
    int l, m;
    double residual;  // |chain - target| / |target|
    cplx ratio;       // chain output measured against grad(r^l Y_lm)
};

// Applies curl L L2inv (1 + r d/dr) to r^l Y_lm and compares with
// -((l+1)/l) grad r^l Y_lm.
TransportReport gauge_transport_check(int l, int m, const GridPtr& grid);

struct UniquenessReport {
    double vr_norm, div_norm, curl_norm, v_norm;
    bool premise_met;    // all three premise norms below tol
    bool conclusion_met; // |V| below tol on the annulus
    bool verdict;        // premise implies conclusion
};

UniquenessReport uniqueness_check(const VectorField& v, double r0, double r1,
                                  double tol);

} // namespace vsh
