#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "vsh/errors.hpp"
#include "vsh/multipole.hpp"
#include "vsh/operators.hpp"
#include "vsh/random_fields.hpp"

using namespace vsh;

namespace {

GridPtr source_grid() { return SphericalGrid::make_ball(16, 48, 5.5); }

const double kQdotGaussian = 2.7206990463849721; // sqrt(3/4pi) pi^{3/2}

SourceFields gaussian_dipole(const GridPtr& g) {
    return make_source({.kind = SourceKind::GaussianDipole, .sigma = 1.0}, g);
}

GridPtr solenoid_grid() { return SphericalGrid::make_ball(16, 64, 3.0); }

SourceFields solenoid(const GridPtr& g) {
    return make_source({.kind = SourceKind::ToroidalSolenoid,
                        .sigma = 0.3,
                        .torus_R = 1.0,
                        .torus_a = 0.4},
                       g);
}

} // namespace

TEST_CASE("channel projection of a curl-free current has no Y_llm part") {
    auto g = source_grid();
    auto f = random_scalar_field(g, 8, {.l_limit = 5, .radial_scale = 1.0});
    auto J = gradient(f);
    for (int l = 1; l <= 4; ++l)
        for (double k : {0.3, 1.0})
            CHECK(std::abs(channel_projection(J, l, 0, l, k)) < 1e-12);
}

TEST_CASE("channel projection of a pure L current sits in the Y_llm channel") {
    auto g = source_grid();
    ScalarField f(g);
    for (int j = 0; j < g->n_r(); ++j) {
        double r = g->r_nodes()[j];
        f.at(j, 2) = r * std::exp(-r * r);
    }
    auto J = apply_L(f);
    CHECK(std::abs(channel_projection(J, 1, 0, 0, 0.7)) < 1e-13);
    CHECK(std::abs(channel_projection(J, 1, 0, 2, 0.7)) < 1e-13);
    CHECK(std::abs(channel_projection(J, 1, 0, 1, 0.7)) > 1e-3);
}

TEST_CASE("Gaussian dipole channel projection matches the Fourier oracle") {
    // int j_0(kr) exp(-r^2) d3r = pi^{3/2} exp(-k^2/4), so
    // a_{1,0}(k) = pi^{3/2} exp(-k^2/4)/sqrt(4pi)
    auto g = source_grid();
    auto J = gaussian_dipole(g).current;
    for (double k : {0.1, 0.5, 1.0, 2.0}) {
        double expect =
            std::pow(M_PI, 1.5) * std::exp(-k * k / 4.0) / std::sqrt(4.0 * M_PI);
        auto got = channel_projection(J, 1, 0, 0, k);
        CHECK(std::abs(got - expect) < 1e-9 * expect);
        // the l+1 channel vanishes for this source by angular parity
        CHECK(std::abs(channel_projection(J, 1, 0, 2, k)) < 1e-12);
    }
    CHECK_THROWS_AS((void)channel_projection(J, 1, 0, 3, 0.5),
                    std::domain_error);
    CHECK_THROWS_AS((void)form_factors(J, 0, 0, {0.5}), std::domain_error);
}

TEST_CASE("qdot moment of the Gaussian dipole") {
    auto g = source_grid();
    auto src = gaussian_dipole(g);
    auto q10 = qdot_moment(src.current, 1, 0);
    CHECK(std::abs(q10 - kQdotGaussian) < 5e-10 * kQdotGaussian);
    // parity: even-l moments vanish
    CHECK(std::abs(qdot_moment(src.current, 2, 0)) < 1e-12);
    // cross-check against the analytic charge rate: Qdot = int r^l Y* rho_dot
    REQUIRE(src.charge_rate.has_value());
    cplx via_rho{0.0};
    for (int j = 0; j < g->n_r(); ++j) {
        double r = g->r_nodes()[j];
        via_rho += g->r_weights()[j] * r * r * r *
                   src.charge_rate->at(j, 2);
    }
    CHECK(std::abs(via_rho - q10) < 1e-10 * std::abs(q10));
}

TEST_CASE("qdot vanishes for solenoidal currents") {
    auto g = source_grid();
    auto loop = make_source({.kind = SourceKind::MagneticLoop,
                             .sigma = 0.3,
                             .torus_R = 1.0},
                            g);
    auto sol = solenoid(solenoid_grid());
    for (int l = 1; l <= 3; ++l)
        for (int m = -l; m <= l; ++m) {
            CHECK(std::abs(qdot_moment(loop.current, l, m)) < 1e-10);
            CHECK(std::abs(qdot_moment(sol.current, l, m)) < 1e-9);
        }
}

TEST_CASE("form factors: curl-free current has no magnetic channel") {
    auto g = source_grid();
    auto f = random_scalar_field(g, 5, {.l_limit = 4, .radial_scale = 1.0});
    auto J = gradient(f);
    auto t = form_factors(J, 2, 1, {0.2, 0.5, 1.0});
    for (auto& v : t.M) CHECK(std::abs(v) < 1e-11);
}

TEST_CASE("Gaussian dipole: E and Qdot form factors match the exact oracle") {
    // E_10(k^2) = Qdot_10(k^2) = Qdot(0) exp(-k^2/4) for J = zhat exp(-r^2)
    auto g = source_grid();
    auto J = gaussian_dipole(g).current;
    std::vector<double> ks{0.05, 0.1, 0.2, 0.4, 0.8, 1.2, 1.6, 2.0};
    auto t = form_factors(J, 1, 0, ks);
    for (size_t i = 0; i < ks.size(); ++i) {
        double expect = kQdotGaussian * std::exp(-ks[i] * ks[i] / 4.0);
        CHECK(std::abs(t.E[i] - expect) < 1e-8 * expect);
        CHECK(std::abs(t.Qdot[i] - expect) < 1e-8 * expect);
        CHECK(std::abs(t.M[i]) < 1e-10);
    }
}

TEST_CASE("channel mixing matrix is orthogonal: no information loss") {
    auto g = source_grid();
    auto J = random_vector_field(g, 12, {.l_limit = 5, .radial_scale = 1.0});
    for (int l : {1, 2, 3})
        for (double k : {0.3, 0.9}) {
            cplx am = channel_projection(J, l, 1, l - 1, k);
            cplx ap = channel_projection(J, l, 1, l + 1, k);
            double s2l1 = std::sqrt(2.0 * l + 1.0);
            cplx e = (std::sqrt(l + 1.0) * am + std::sqrt(double(l)) * ap) / s2l1;
            cplx q = (std::sqrt(double(l)) * am - std::sqrt(l + 1.0) * ap) / s2l1;
            CHECK(std::norm(e) + std::norm(q) ==
                  doctest::Approx(std::norm(am) + std::norm(ap)).epsilon(1e-12));
        }
}

TEST_CASE("toroid moments vanish on pure Y_llm currents") {
    auto g = source_grid();
    ScalarField f(g);
    for (int j = 0; j < g->n_r(); ++j) {
        double r = g->r_nodes()[j];
        f.at(j, HarmonicIndex{2, 1}.flat()) = r * r * std::exp(-r * r);
    }
    auto J = apply_L(f);
    for (int l = 1; l <= 3; ++l)
        for (int n = 0; n <= 2; ++n)
            CHECK(std::abs(toroid_moment(J, l, std::min(l, 1), n)) < 1e-13);
}

TEST_CASE("toroidal solenoid: T_10 matches the Cartesian oracle") {
    auto g = solenoid_grid();
    auto sol = solenoid(g);
    auto t10 = toroid_moment(sol.current, 1, 0, 0);
    CHECK(std::abs(t10) > 1e-3);

    // independent Cartesian route: sample-space quadrature of
    // t_z = (1/10) int [(r.J) z - 2 r^2 J_z]; with orthonormal harmonics
    // T_10 = sqrt(3/4pi) t_z
    auto s = synthesize_vector(sol.current);
    const int nt = g->n_theta(), np = g->n_phi(), npts = g->n_points();
    double tz = 0.0;
    for (int j = 0; j < g->n_r(); ++j) {
        double r = g->r_nodes()[j];
        for (int i = 0; i < nt; ++i) {
            double st = g->sin_theta()[i], ct = g->cos_theta()[i];
            for (int kph = 0; kph < np; ++kph) {
                double x = r * st * std::cos(g->phi(kph));
                double y = r * st * std::sin(g->phi(kph));
                double z = r * ct;
                size_t p = (static_cast<size_t>(j) * nt + i) * np + kph;
                double Jx = s[p].real(), Jy = s[npts + p].real(),
                       Jz = s[2 * static_cast<size_t>(npts) + p].real();
                double rj = x * Jx + y * Jy + z * Jz;
                tz += g->r_weights()[j] * r * r * g->theta_weights()[i] *
                      (2.0 * M_PI / np) * ((rj * z - 2.0 * r * r * Jz) / 10.0);
            }
        }
    }
    double expect = std::sqrt(3.0 / (4.0 * M_PI)) * tz;
    CHECK(t10.real() == doctest::Approx(expect).epsilon(1e-8));
    CHECK(std::abs(t10.imag()) < 1e-12 * std::abs(expect));
}

TEST_CASE("hermiticity of moments for a real offset source") {
    auto g = source_grid();
    auto src = make_source({.kind = SourceKind::GaussianDipole,
                            .sigma = 0.8,
                            .center = {0.4, 0.3, 0.2}},
                           g);
    for (int l = 1; l <= 2; ++l)
        for (int m = 1; m <= l; ++m) {
            cplx qp = qdot_moment(src.current, l, m);
            cplx qm = qdot_moment(src.current, l, -m);
            double sign = (m % 2 == 0) ? 1.0 : -1.0;
            CHECK(std::abs(qm - sign * std::conj(qp)) < 1e-10);
            cplx tp = toroid_moment(src.current, l, m, 0);
            cplx tm = toroid_moment(src.current, l, -m, 0);
            CHECK(std::abs(tm - sign * std::conj(tp)) < 1e-10);
        }
}

TEST_CASE("siegert split of the Gaussian dipole") {
    auto g = source_grid();
    auto J = gaussian_dipole(g).current;
    std::vector<double> ks;
    for (int i = 0; i < 12; ++i) ks.push_back(0.04 + 0.08 * i);
    auto res = siegert_split(J, 1, 0, ks);
    CHECK(std::abs(res.qdot0 - kQdotGaussian) < 1e-9 * kQdotGaussian);
    // exact limit: -Qdot/4
    CHECK(std::abs(res.toroid_limit - (-kQdotGaussian / 4.0)) <
          1e-6 * kQdotGaussian);
    CHECK(res.residual < 1e-5);
}

TEST_CASE("siegert split rejects unusable wavenumber grids") {
    auto g = source_grid();
    auto J = gaussian_dipole(g).current;
    CHECK_THROWS_AS((void)siegert_split(J, 1, 0, {0.5}), FitError);
    CHECK_THROWS_AS((void)siegert_split(J, 1, 0, {1.0, 1.5, 2.0, 2.5}),
                    FitError);
}

TEST_CASE("anapole: solenoid has only toroid content") {
    auto g = solenoid_grid();
    auto sol = solenoid(g);
    const auto& J = sol.current;
    CHECK(norm(divergence(J)) < 1e-9 * norm(J));

    std::vector<double> ks{0.05, 0.1, 0.15, 0.2};
    for (int l = 1; l <= 3; ++l) {
        double scale_l = source_scale(J, l);
        for (int m = -l; m <= l; ++m) {
            CHECK(std::abs(qdot_moment(J, l, m)) < 1e-6 * scale_l);
            auto t = form_factors(J, l, m, ks);
            for (auto& v : t.M) CHECK(std::abs(v) < 1e-6 * scale_l);
        }
    }
    double scale_t = source_scale(J, 2);
    CHECK(std::abs(toroid_moment(J, 1, 0, 0)) > 1e-3 * scale_t);

    // E_10 = k^2 T_10(k^2): two independent routes to the k^2 slope
    std::vector<double> ks2;
    for (int i = 0; i < 10; ++i) ks2.push_back(0.04 + 0.05 * i);
    auto res = siegert_split(J, 1, 0, ks2);
    CHECK(std::abs(res.qdot0) < 1e-8 * scale_t);
    CHECK(res.residual < 0.02);
}

TEST_CASE("magnetic loop is a pure M source") {
    auto g = source_grid();
    auto loop = make_source({.kind = SourceKind::MagneticLoop,
                             .sigma = 0.3,
                             .torus_R = 1.0},
                            g);
    const auto& J = loop.current;
    double scale1 = source_scale(J, 1);
    auto t = form_factors(J, 1, 0, {0.1, 0.3});
    CHECK(std::abs(t.M[0]) > 1e-3 * scale1);
    for (auto& v : t.Qdot) CHECK(std::abs(v) < 1e-8 * scale1);
    for (int m = -1; m <= 1; ++m)
        CHECK(std::abs(toroid_moment(J, 1, m, 0)) < 1e-8 * scale1);
}

TEST_CASE("long-wavelength law") {
    auto g = SphericalGrid::make_ball(6, 32, 2.0);
    for (int l : {1, 2, 3}) {
        auto rep = long_wavelength_check(l, 0, 0.1 / 2.0 * 2.0, g); // k R = 0.2
        CHECK(rep.residual_k < 0.01);
        CHECK(rep.exponent == doctest::Approx(2.0).epsilon(0.05));
        CHECK(rep.leading_coeff_ratio == doctest::Approx(1.0).epsilon(0.01));
    }
}

TEST_CASE("mean-radii expansion reconstructs the Coulomb form factor") {
    auto g = source_grid();
    auto J = gaussian_dipole(g).current;
    // exact radii for the Gaussian: Qdot^{(2n)} = Qdot0 (-1/4)^n
    for (int n = 1; n <= 3; ++n) {
        cplx got = qdot_radius_moment(J, 1, 0, n);
        double expect = kQdotGaussian * std::pow(-0.25, n);
        CHECK(got.real() == doctest::Approx(expect).epsilon(1e-8));
    }
    const double k = 0.8;
    cplx direct = qdot_form_factor(J, 1, 0, k);
    cplx partial{0.0};
    double fact = 1.0;
    for (int n = 0; n <= 3; ++n) {
        if (n > 0) fact *= n;
        partial += std::pow(k, 2 * n) / fact * qdot_radius_moment(J, 1, 0, n);
    }
    double bound = std::pow(k, 8) / 24.0 *
                   std::abs(qdot_radius_moment(J, 1, 0, 4));
    CHECK(std::abs(direct - partial) < 1.5 * bound);
}

TEST_CASE("source construction guards") {
    auto g = SphericalGrid::make_ball(4, 24, 3.0);
    CHECK_THROWS_AS(
        (void)make_source({.kind = SourceKind::GaussianDipole, .sigma = 1.0},
                          g),
        ConfigError); // 5.3 sigma > r_max
    CHECK_THROWS_AS((void)make_source({.kind = SourceKind::ToroidalSolenoid,
                                       .sigma = 0.0,
                                       .torus_R = 1.0,
                                       .torus_a = 0.0},
                                      g),
                    ConfigError);
}

TEST_CASE("CSV output shape") {
    auto g = source_grid();
    auto J = gaussian_dipole(g).current;
    auto t = form_factors(J, 1, 0, {0.5, 1.0});
    std::ostringstream os;
    write_form_factors_csv(os, {t});
    auto text = os.str();
    CHECK(text.rfind("l,m,n_or_k,re,im,quantity\n", 0) == 0);
    CHECK(text.find("\r") == std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * 3);

    MomentSet ms;
    ms.qdot0[{1, 0}] = qdot_moment(J, 1, 0);
    ms.toroid[{1, 0, 0}] = toroid_moment(J, 1, 0, 0);
    std::ostringstream os2;
    write_moments_csv(os2, ms);
    CHECK(os2.str().find("Qdot0") != std::string::npos);
    CHECK(os2.str().find("T2n") != std::string::npos);
}

TEST_CASE("spectral channel projection matches pointwise vector-harmonic quadrature") {
    // two independent routes to a_{l,lp}(k): the spectral channel formulas
    // vs direct sample-space quadrature with eval_vector_harmonic
    auto g = SphericalGrid::make_ball(8, 24, 2.5);
    auto J = random_vector_field(g, 31, {.l_limit = 5, .radial_scale = 0.7});
    auto s = synthesize_vector(J);
    const int nt = g->n_theta(), np = g->n_phi(), npts = g->n_points();
    for (int l : {1, 2, 3})
        for (int m : {-l, 0, 1})
            for (int lp : {l - 1, l, l + 1}) {
                const double k = 0.9;
                cplx direct{0.0};
                for (int j = 0; j < g->n_r(); ++j) {
                    double r = g->r_nodes()[j];
                    double w = g->r_weights()[j] * r * r *
                               spherical_bessel_j(lp, k * r);
                    for (int i = 0; i < nt; ++i) {
                        double th = std::acos(g->cos_theta()[i]);
                        for (int kp = 0; kp < np; ++kp) {
                            auto yv = eval_vector_harmonic({l, lp, m}, th,
                                                           g->phi(kp));
                            size_t p =
                                (static_cast<size_t>(j) * nt + i) * np + kp;
                            cplx dotv = std::conj(yv[0]) * s[p] +
                                        std::conj(yv[1]) * s[npts + p] +
                                        std::conj(yv[2]) *
                                            s[2 * size_t(npts) + p];
                            direct += w * g->theta_weights()[i] *
                                      (2.0 * M_PI / np) * dotv;
                        }
                    }
                }
                cplx spect = channel_projection(J, l, m, lp, k);
                CHECK(std::abs(spect - direct) < 1e-11);
            }
}

TEST_CASE("E - Qdot vanishes at least quadratically on every populated channel") {
    // an offset dipole breaks all symmetries, populating m != 0 channels
    auto g = source_grid();
    auto J = make_source({.kind = SourceKind::GaussianDipole,
                          .sigma = 0.9,
                          .center = {0.35, 0.25, 0.15}},
                         g)
                 .current;
    std::vector<double> ks{0.03, 0.06};
    for (int l = 1; l <= 3; ++l) {
        double scale_l = source_scale(J, l);
        for (int m = -l; m <= l; ++m) {
            auto t = form_factors(J, l, m, ks);
            cplx q0 = qdot_moment(J, l, m);
            double r1 = std::abs(t.E[0] - q0), r2 = std::abs(t.E[1] - q0);
            if (r2 < 1e-10 * scale_l) continue; // channel not populated
            double expn = std::log(r2 / r1) / std::log(ks[1] / ks[0]);
            INFO("l=", l, " m=", m, " exponent ", expn);
            CHECK(expn >= 2.0 - 0.05);
        }
    }
}
