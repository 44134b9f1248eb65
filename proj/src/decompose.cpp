#include "vsh/decompose.hpp"

#include <cmath>

#include "vsh/errors.hpp"
#include "vsh/operators.hpp"

namespace vsh {

namespace {

double windowed_norm(const VectorField& v, double r0, double r1,
                     bool radial_only = false) {
    const auto& g = v.grid();
    double acc = 0.0;
    for (int j = 0; j < g->n_r(); ++j) {
        const double r = g->r_nodes()[j];
        if (r < r0 || r > r1) continue;
        const double w = g->r_weights()[j] * r * r;
        for (int c = 0; c < (radial_only ? 1 : 3); ++c)
            for (int h = 0; h < g->n_harm(); ++h)
                acc += w * std::norm(v.at(static_cast<Channel>(c), j, h));
    }
    return std::sqrt(acc);
}

double windowed_norm(const ScalarField& f, double r0, double r1) {
    const auto& g = f.grid();
    double acc = 0.0;
    for (int j = 0; j < g->n_r(); ++j) {
        const double r = g->r_nodes()[j];
        if (r < r0 || r > r1) continue;
        const double w = g->r_weights()[j] * r * r;
        for (int h = 0; h < g->n_harm(); ++h)
            acc += w * std::norm(f.at(j, h));
    }
    return std::sqrt(acc);
}

// scalar field with a fixed power-law profile on one harmonic
ScalarField power_profile_field(const GridPtr& g, int l, int m, double expo) {
    ScalarField f(g);
    const int h = l * (l + 1) + m;
    for (int j = 0; j < g->n_r(); ++j)
        f.at(j, h) = std::pow(g->r_nodes()[j], expo);
    return f;
}

} // namespace

HelmholtzParts helmholtz(const VectorField& v, double leak_tol) {
    HelmholtzParts out;
    out.support_leak = boundary_leak(v);
    out.leak_warning = out.support_leak > leak_tol;

    auto phi = inverse_laplacian_value(divergence(v));
    out.longitudinal = gradient(phi);

    auto c = curl(v);
    auto ax = inverse_laplacian_value(extract_component(c, 0));
    auto ay = inverse_laplacian_value(extract_component(c, 1));
    auto az = inverse_laplacian_value(extract_component(c, 2));
    out.transverse = cplx{-1.0} * curl(vector_from_components(ax, ay, az));

    double vn = norm(v);
    if (vn > 0.0)
        out.reconstruction_residual =
            norm(v - out.longitudinal - out.transverse) / vn;
    return out;
}

GaugeFieldResult gauge_field(const GaugeFieldSpec& spec, const GridPtr& grid) {
    if (spec.l < 1 || std::abs(spec.m) > spec.l)
        throw std::domain_error("gauge_field: invalid (l, m)");
    const bool regular = spec.branch == GaugeBranch::Regular;
    if (!regular && grid->is_ball())
        throw std::domain_error(
            "gauge_field: singular branch requires an annulus grid");

    const int l = spec.l;
    const double expo = regular ? static_cast<double>(l)
                                : static_cast<double>(-l - 1);
    auto u = power_profile_field(grid, l, spec.m, expo);

    // gradient form: -(l+1) grad r^l Y  or  +l grad r^{-l-1} Y
    const double cgrad = regular ? -(l + 1.0) : static_cast<double>(l);
    VectorField vg = (spec.coefficient * cgrad) * gradient(u);

    // curl-of-L form: curl((r x grad) u) = -curl(L u)
    VectorField vc = (spec.coefficient * cplx{-1.0}) * curl(apply_L(u));

    GaugeFieldResult res{std::move(vg), 0.0, 0.0, 0.0};
    const double n = norm(res.field);
    if (n > 0.0) {
        res.route_mismatch = norm(res.field - vc) / n;
        res.div_norm = norm(divergence(res.field)) / n;
        res.curl_norm = norm(curl(res.field)) / n;
    }
    return res;
}

DebyePotentials debye_decompose(const VectorField& v, DebyeDiagnostics* diag,
                                double route_tol, double gauge_tol) {
    const auto& g = v.grid();
    DebyeDiagnostics local;
    local.support_leak = boundary_leak(v);
    local.leak_warning = local.support_leak > 1e-12;

    DebyePotentials p;

    // phi, gauge-shifted so the spherical mean vanishes on the boundary
    p.phi = inverse_laplacian_value(divergence(v));
    {
        auto prof = p.phi.profile(0);
        cplx at_rim = g->interp_radial(prof, g->r_max());
        for (int j = 0; j < g->n_r(); ++j) p.phi.at(j, 0) -= at_rim;
    }

    const double vnorm = norm(v);

    // psi route 1, the L projection: L.V summed componentwise
    ScalarField ldotv(g);
    for (int axis = 0; axis < 3; ++axis) {
        auto li = extract_component(apply_L(extract_component(v, axis)), axis);
        ldotv += li;
    }
    try {
        p.psi = inverse_L2(ldotv, gauge_tol, vnorm);
    } catch (const GaugeViolationError& e) {
        throw GaugeViolationError(std::string("debye_decompose (psi): ") +
                                  e.what());
    }

    // psi route 2: the r.curl form (spectral, independent numerical path)
    auto psi2 = cplx{-1.0} * inverse_L2(dot_with_r(curl(v)), 1.0);
    // mismatch relative to the problem scale, not to |psi| (which may be 0)
    const double scale = std::max({norm(p.psi), norm(psi2), vnorm});
    if (scale > 0.0) {
        local.psi_route_mismatch = norm(p.psi - psi2) / scale;
        if (local.psi_route_mismatch > route_tol)
            throw FitError("debye_decompose: the two psi routes disagree ("
                           + std::to_string(local.psi_route_mismatch) + ")");
    }

    // chi from the printed two-term formula; the l=0 parts cancel inside
    auto pre = radial_scaling(p.phi) - dot_with_r(v);
    try {
        p.chi = inverse_L2(pre, gauge_tol, vnorm * g->r_max());
    } catch (const GaugeViolationError& e) {
        throw GaugeViolationError(std::string("debye_decompose (chi): ") +
                                  e.what());
    }

    if (diag) *diag = local;
    return p;
}

VectorField debye_synthesize(const DebyePotentials& p) {
    const auto& g = p.phi.grid();
    if (!g->same_as(*p.psi.grid()) || !g->same_as(*p.chi.grid()))
        throw LayoutError("debye_synthesize: potentials on different grids");
    VectorField v = gradient(p.phi);
    v += apply_L(p.psi);
    v += apply_N(p.chi);
    return v;
}

TransportReport gauge_transport_check(int l, int m, const GridPtr& grid) {
    if (l < 1) throw std::domain_error("gauge_transport_check: l must be >= 1");
    auto u = power_profile_field(grid, l, m, static_cast<double>(l));

    // (1 + r d/dr) u, then L^{-2}, then curl L
    auto a = u + radial_scaling(u);
    auto b = inverse_L2(a, 1.0);
    auto chain = curl(apply_L(b));

    auto gu = gradient(u);
    auto target = cplx{-(l + 1.0) / l} * gu;

    TransportReport rep{l, m, 0.0, cplx{0.0}};
    const double tn = norm(target);
    if (tn > 0.0) rep.residual = norm(chain - target) / tn;
    const cplx denom = dot(gu, gu);
    if (std::abs(denom) > 0.0) rep.ratio = dot(gu, chain) / denom;
    return rep;
}

UniquenessReport uniqueness_check(const VectorField& v, double r0, double r1,
                                  double tol) {
    if (!(r0 < r1))
        throw ConfigError("uniqueness_check: need r0 < r1");
    UniquenessReport rep{};
    rep.vr_norm = windowed_norm(v, r0, r1, /*radial_only=*/true);
    rep.div_norm = windowed_norm(divergence(v), r0, r1);
    rep.curl_norm = windowed_norm(curl(v), r0, r1);
    rep.v_norm = windowed_norm(v, r0, r1);
    rep.premise_met = rep.vr_norm < tol && rep.div_norm < tol &&
                      rep.curl_norm < tol;
    rep.conclusion_met = rep.v_norm < tol;
    rep.verdict = !rep.premise_met || rep.conclusion_met;
    return rep;
}

} // namespace vsh
