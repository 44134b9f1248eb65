#include "vsh/multipole.hpp"

#include <cmath>
#include <cstdio>

#include "vsh/errors.hpp"
#include "vsh/operators.hpp"

namespace vsh {

namespace {

double sqrt_kappa(int l) { return std::sqrt(static_cast<double>(l) * (l + 1)); }

// projections of the (l,m) channel profiles onto the lp = l-1 / l+1 vector
// harmonics at shell j
cplx proj_lminus(const VectorField& J, int l, int h, int j) {
    const double c1 = std::sqrt(l / (2.0 * l + 1.0));
    const double c2 = std::sqrt((l + 1.0) / (2.0 * l + 1.0));
    return c1 * J.at(Channel::R, j, h) + c2 * J.at(Channel::S, j, h);
}

cplx proj_lplus(const VectorField& J, int l, int h, int j) {
    const double c1 = std::sqrt((l + 1.0) / (2.0 * l + 1.0));
    const double c2 = std::sqrt(l / (2.0 * l + 1.0));
    return c1 * J.at(Channel::R, j, h) - c2 * J.at(Channel::S, j, h);
}

// radial quadrature of w(r_j) * proj(j)
template <typename Proj, typename Weight>
cplx radial_moment(const VectorField& J, Proj&& proj, Weight&& w) {
    const auto& g = J.grid();
    cplx acc{0.0};
    for (int j = 0; j < g->n_r(); ++j) {
        const double r = g->r_nodes()[j];
        acc += g->r_weights()[j] * r * r * w(r) * proj(j);
    }
    return acc;
}

void check_lm(const GridPtr& g, int l, int m) {
    if (l < 1 || std::abs(m) > l)
        throw std::domain_error("multipole: need l >= 1 and |m| <= l");
    if (l > g->l_max())
        throw std::domain_error("multipole: l exceeds the grid band limit");
}

// least-squares even polynomial c0 + c1 x + ... of degree deg in x = k^2,
// solved by normal equations in long double
std::vector<cplx> fit_even_poly(const std::vector<double>& k,
                                const std::vector<cplx>& y, int deg) {
    const int n = deg + 1, npts = static_cast<int>(k.size());
    std::vector<long double> a(static_cast<size_t>(n) * n, 0.0L);
    std::vector<std::complex<long double>> b(n, 0.0L);
    for (int p = 0; p < npts; ++p) {
        const long double x = static_cast<long double>(k[p]) * k[p];
        long double xi = 1.0L;
        std::vector<long double> pow(2 * n - 1);
        for (int q = 0; q < 2 * n - 1; ++q) {
            pow[q] = xi;
            xi *= x;
        }
        for (int i = 0; i < n; ++i) {
            for (int jj = 0; jj < n; ++jj) a[i * n + jj] += pow[i + jj];
            b[i] += pow[i] * std::complex<long double>(y[p].real(), y[p].imag());
        }
    }
    // Gaussian elimination with partial pivoting
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int row = col + 1; row < n; ++row)
            if (std::abs(a[row * n + col]) > std::abs(a[piv * n + col]))
                piv = row;
        if (std::abs(a[piv * n + col]) < 1e-30L)
            throw FitError("siegert_split: singular normal equations");
        if (piv != col) {
            for (int q = 0; q < n; ++q) std::swap(a[col * n + q], a[piv * n + q]);
            std::swap(b[col], b[piv]);
        }
        for (int row = col + 1; row < n; ++row) {
            long double f = a[row * n + col] / a[col * n + col];
            for (int q = col; q < n; ++q) a[row * n + q] -= f * a[col * n + q];
            b[row] -= f * b[col];
        }
    }
    std::vector<cplx> c(n);
    for (int row = n - 1; row >= 0; --row) {
        std::complex<long double> s = b[row];
        for (int q = row + 1; q < n; ++q)
            s -= a[row * n + q] * std::complex<long double>(c[q].real(), c[q].imag());
        s /= a[row * n + row];
        c[row] = {static_cast<double>(s.real()), static_cast<double>(s.imag())};
    }
    return c;
}

} // namespace

cplx channel_projection(const VectorField& J, int l, int m, int lp, double k) {
    check_lm(J.grid(), l, m);
    if (lp != l - 1 && lp != l && lp != l + 1)
        throw std::domain_error("channel_projection: lp must be l-1, l or l+1");
    if (k <= 0.0) throw std::domain_error("channel_projection: k must be > 0");
    const int h = l * (l + 1) + m;
    if (lp == l)
        return radial_moment(
            J, [&](int j) { return J.at(Channel::T, j, h); },
            [&](double r) { return spherical_bessel_j(l, k * r); });
    if (lp == l - 1)
        return radial_moment(
            J, [&](int j) { return proj_lminus(J, l, h, j); },
            [&](double r) { return spherical_bessel_j(l - 1, k * r); });
    return radial_moment(
        J, [&](int j) { return proj_lplus(J, l, h, j); },
        [&](double r) { return spherical_bessel_j(l + 1, k * r); });
}

FormFactorTable form_factors(const VectorField& J, int l, int m,
                             std::vector<double> k_grid) {
    check_lm(J.grid(), l, m);
    for (size_t i = 0; i + 1 < k_grid.size(); ++i)
        if (!(k_grid[i] < k_grid[i + 1]) || k_grid[i] <= 0.0)
            throw ConfigError("form_factors: k grid must be positive and "
                              "strictly increasing");
    FormFactorTable t;
    t.l = l;
    t.m = m;
    t.k_grid = std::move(k_grid);
    const double dfl = double_factorial_odd(l);       // (2l+1)!!
    const double s2l1 = std::sqrt(2.0 * l + 1.0);
    for (double k : t.k_grid) {
        const cplx am = channel_projection(J, l, m, l - 1, k);
        const cplx ap = channel_projection(J, l, m, l + 1, k);
        const cplx a0 = channel_projection(J, l, m, l, k);
        const double kpow = std::pow(k, 1 - l);
        t.Qdot.push_back(dfl * kpow *
                         (std::sqrt(double(l)) * am -
                          std::sqrt(l + 1.0) * ap) / s2l1);
        t.E.push_back(dfl * kpow * std::sqrt(l / (l + 1.0)) *
                      (std::sqrt(l + 1.0) * am + std::sqrt(double(l)) * ap) /
                      s2l1);
        t.M.push_back(dfl / std::pow(k, l) * a0);
    }
    return t;
}

cplx qdot_moment(const VectorField& J, int l, int m) {
    if (l == 0) return cplx{0.0}; // grad of a constant
    check_lm(J.grid(), l, m);
    const int h = l * (l + 1) + m;
    return radial_moment(
        J,
        [&](int j) {
            return static_cast<double>(l) * J.at(Channel::R, j, h) +
                   sqrt_kappa(l) * J.at(Channel::S, j, h);
        },
        [&](double r) { return std::pow(r, l - 1); });
}

cplx qdot_radius_moment(const VectorField& J, int l, int m, int n) {
    if (n < 0) throw std::domain_error("qdot_radius_moment: n must be >= 0");
    if (n == 0) return qdot_moment(J, l, m);
    check_lm(J.grid(), l, m);
    const int h = l * (l + 1) + m;
    const int p = l + 2 * n;
    // int grad(r^p conj(Y)) . J
    cplx base = radial_moment(
        J,
        [&](int j) {
            return static_cast<double>(p) * J.at(Channel::R, j, h) +
                   sqrt_kappa(l) * J.at(Channel::S, j, h);
        },
        [&](double r) { return std::pow(r, p - 1); });
    // (2l+1)!!/(2l+2n+1)!! = prod_{q=1..n} 1/(2l+2q+1)
    double fac = (n % 2 == 0) ? 1.0 : -1.0;
    for (int q = 1; q <= n; ++q) fac /= 2.0 * (2.0 * l + 2.0 * q + 1.0);
    return fac * base;
}

cplx qdot_form_factor(const VectorField& J, int l, int m, double k) {
    check_lm(J.grid(), l, m);
    const cplx am = channel_projection(J, l, m, l - 1, k);
    const cplx ap = channel_projection(J, l, m, l + 1, k);
    return double_factorial_odd(l) * std::pow(k, 1 - l) *
           (std::sqrt(double(l)) * am - std::sqrt(l + 1.0) * ap) /
           std::sqrt(2.0 * l + 1.0);
}

cplx toroid_moment(const VectorField& J, int l, int m, int n) {
    if (l == 0)
        throw std::domain_error("toroid_moment: no l = 0 toroid channel");
    if (n < 0) throw std::domain_error("toroid_moment: n must be >= 0");
    check_lm(J.grid(), l, m);
    const int h = l * (l + 1) + m;
    // the printed channel weight +2 sqrt(l/(l+1))/(2l+3) refers to the
    // paper's Y_{l,l+1,m} sign; this code's l+1 channel is the negative of
    // that (fixed so the gradient display holds verbatim), hence the minus
    const double w_plus = -2.0 * std::sqrt(l / (l + 1.0)) / (2.0 * l + 3.0);
    const double pref = -0.5 * std::sqrt(l / (2.0 * l + 1.0));
    return pref * radial_moment(
                      J,
                      [&](int j) {
                          return proj_lminus(J, l, h, j) +
                                 w_plus * proj_lplus(J, l, h, j);
                      },
                      [&](double r) { return std::pow(r, l + 2 * n + 1); });
}

SiegertResult siegert_split(const VectorField& J, int l, int m,
                            std::vector<double> k_grid) {
    check_lm(J.grid(), l, m);
    if (k_grid.size() < 4)
        throw FitError("siegert_split: need at least 4 wavenumbers for the "
                       "degree-3 even fit");
    if (k_grid.front() * J.grid()->r_max() > 0.3)
        throw FitError("siegert_split: k grid does not reach the "
                       "long-wavelength regime (k r_max <= 0.3)");

    SiegertResult res;
    res.qdot0 = qdot_moment(J, l, m);
    auto ff = form_factors(J, l, m, k_grid);
    res.k_grid = std::move(k_grid);
    res.toroid_of_k2.reserve(res.k_grid.size());
    for (size_t i = 0; i < res.k_grid.size(); ++i)
        res.toroid_of_k2.push_back((ff.E[i] - res.qdot0) /
                                   (res.k_grid[i] * res.k_grid[i]));

    const size_t nfit = std::min<size_t>(8, res.k_grid.size());
    std::vector<double> kf(res.k_grid.begin(), res.k_grid.begin() + nfit);
    std::vector<cplx> tf(res.toroid_of_k2.begin(),
                         res.toroid_of_k2.begin() + nfit);
    res.toroid_limit = fit_even_poly(kf, tf, 3)[0];
    res.toroid_printed = toroid_moment(J, l, m, 0);
    const double scale = std::max(
        {std::abs(res.toroid_limit), std::abs(res.toroid_printed), 1e-300});
    res.residual = std::abs(res.toroid_limit - res.toroid_printed) / scale;
    return res;
}

LongWavelengthReport long_wavelength_check(int l, int m, double k,
                                           const GridPtr& grid) {
    check_lm(grid, l, m);
    if (k <= 0.0) throw std::domain_error("long_wavelength_check: k > 0");
    const int h = l * (l + 1) + m;

    auto resid_at = [&](double kk) {
        ScalarField f(grid);
        for (int j = 0; j < grid->n_r(); ++j)
            f.at(j, h) = spherical_bessel_j(l, kk * grid->r_nodes()[j]);
        auto w1 = curl(apply_L(f));
        auto w2 = cplx{static_cast<double>(l + 1)} * gradient(f);
        return norm(w1 - w2) / std::max({norm(w1), norm(w2), 1e-300});
    };

    LongWavelengthReport rep;
    rep.l = l;
    rep.m = m;
    rep.k = k;
    rep.residual_k = resid_at(k);
    rep.residual_half_k = resid_at(0.5 * k);
    rep.exponent = std::log2(rep.residual_k / rep.residual_half_k);

    // leading magnitude against (l+1) k^l/(2l+1)!! grad(r^l Y)
    ScalarField f(grid), u(grid);
    for (int j = 0; j < grid->n_r(); ++j) {
        f.at(j, h) = spherical_bessel_j(l, k * grid->r_nodes()[j]);
        u.at(j, h) = std::pow(grid->r_nodes()[j], l);
    }
    auto w1 = curl(apply_L(f));
    auto g = cplx{(l + 1.0) * std::pow(k, l) / double_factorial_odd(l)} *
             gradient(u);
    rep.leading_coeff_ratio = std::real(dot(g, w1) / dot(g, g));
    return rep;
}

// ---- sources -----------------------------------------------------------------

namespace {

struct TubeProfile {
    double A, R2, inv; // inv = 1/(4 R^2 w^2) with w the tube width
    double value(double u, double z) const {
        const double d = u - R2;
        return A * std::exp(-(d * d + 4.0 * R2 * z * z) * inv);
    }
    double du(double u, double z) const {
        return -value(u, z) * 2.0 * (u - R2) * inv;
    }
    double dz(double u, double z) const {
        return -value(u, z) * 8.0 * R2 * z * inv;
    }
};

} // namespace

SourceFields make_source(const SourceSpec& spec, const GridPtr& grid) {
    const int nt = grid->n_theta(), np = grid->n_phi();
    const int npts = grid->n_points();
    std::vector<cplx> s(static_cast<size_t>(3) * npts, cplx{0.0});

    auto for_each_point = [&](auto&& fn) {
        for (int j = 0; j < grid->n_r(); ++j)
            for (int i = 0; i < nt; ++i) {
                const double st = grid->sin_theta()[i], ct = grid->cos_theta()[i];
                for (int kk = 0; kk < np; ++kk) {
                    const double x = grid->r_nodes()[j] * st * std::cos(grid->phi(kk));
                    const double y = grid->r_nodes()[j] * st * std::sin(grid->phi(kk));
                    const double z = grid->r_nodes()[j] * ct;
                    const size_t p =
                        (static_cast<size_t>(j) * nt + i) * np + kk;
                    fn(x, y, z, p);
                }
            }
    };

    SourceFields out;
    switch (spec.kind) {
    case SourceKind::GaussianDipole: {
        if (spec.sigma <= 0.0)
            throw ConfigError("gaussian_dipole: sigma must be > 0");
        const double reach =
            std::sqrt(spec.center[0] * spec.center[0] +
                      spec.center[1] * spec.center[1] +
                      spec.center[2] * spec.center[2]) +
            5.3 * spec.sigma;
        if (reach > grid->r_max())
            throw ConfigError("gaussian_dipole: support exceeds the grid "
                              "(need |center| + 5.3 sigma <= r_max)");
        const double inv = 1.0 / (spec.sigma * spec.sigma);
        for_each_point([&](double x, double y, double z, size_t p) {
            const double dx = x - spec.center[0], dy = y - spec.center[1],
                         dz = z - spec.center[2];
            s[2 * static_cast<size_t>(npts) + p] =
                spec.amplitude * std::exp(-(dx * dx + dy * dy + dz * dz) * inv);
        });
        out.current = analyze_vector(grid, s);
        // rho_dot = -div J = 2 A (z - cz)/sigma^2 exp(...)
        std::vector<cplx> rs(npts);
        for_each_point([&](double x, double y, double z, size_t p) {
            const double dx = x - spec.center[0], dy = y - spec.center[1],
                         dz = z - spec.center[2];
            rs[p] = 2.0 * spec.amplitude * dz * inv *
                    std::exp(-(dx * dx + dy * dy + dz * dz) * inv);
        });
        out.charge_rate = analyze_scalar(grid, rs);
        break;
    }
    case SourceKind::MagneticLoop: {
        if (spec.torus_R <= 0.0 || spec.sigma <= 0.0)
            throw ConfigError("magnetic_loop: need R > 0 and sigma > 0");
        if (spec.torus_R + 5.3 * spec.sigma > grid->r_max())
            throw ConfigError("magnetic_loop: support exceeds the grid");
        TubeProfile tube{spec.amplitude, spec.torus_R * spec.torus_R,
                         1.0 / (4.0 * spec.torus_R * spec.torus_R *
                                spec.sigma * spec.sigma)};
        for_each_point([&](double x, double y, double z, size_t p) {
            const double h = tube.value(x * x + y * y, z);
            s[p] = -y * h;
            s[npts + p] = x * h;
        });
        out.current = analyze_vector(grid, s);
        out.charge_rate = ScalarField(grid); // exactly solenoidal
        break;
    }
    case SourceKind::ToroidalSolenoid: {
        if (spec.torus_R <= 0.0)
            throw ConfigError("toroidal_solenoid: need R > 0");
        const double w = std::sqrt(spec.torus_a * spec.torus_a +
                                   spec.sigma * spec.sigma);
        if (w <= 0.0)
            throw ConfigError("toroidal_solenoid: need a > 0 or sigma > 0");
        const double R2 = spec.torus_R * spec.torus_R;
        const double reach = std::sqrt(
            R2 + std::max(10.7 * spec.torus_R * w, 28.2 * w * w));
        if (reach > grid->r_max())
            throw ConfigError("toroidal_solenoid: support exceeds the grid");
        // under-resolution warning: the tube's radial feature size is about
        // half its nominal width
        double spacing = 0.0;
        for (int j = 1; j < grid->n_r(); ++j) {
            const double mid =
                0.5 * (grid->r_nodes()[j] + grid->r_nodes()[j - 1]);
            if (std::abs(mid - spec.torus_R) < 2.0 * w)
                spacing = std::max(
                    spacing, grid->r_nodes()[j] - grid->r_nodes()[j - 1]);
        }
        if (spacing > 0.35 * w)
            std::fprintf(stderr,
                         "warning: toroidal solenoid tube (width %.3g) is "
                         "under-resolved by the radial grid (spacing %.3g); "
                         "use a finer grid\n",
                         w, spacing);
        // Odd-in-z stream function chi localized on the torus shell;
        // J = curl(L chi) is the poloidal winding current and is
        // divergence-free by construction (curl of the azimuthal field
        // L chi). Only odd degrees survive, so the toroid dipole is the
        // leading moment.
        TubeProfile tube{spec.amplitude, R2,
                         1.0 / (4.0 * R2 * w * w)};
        std::vector<cplx> cs(npts);
        for_each_point([&](double x, double y, double z, size_t p) {
            cs[p] = (z / spec.torus_R) * tube.value(x * x + y * y, z);
        });
        out.current = curl(apply_L(analyze_scalar(grid, cs)));
        out.charge_rate = ScalarField(grid); // built as a curl
        break;
    }
    }
    out.support_leak = boundary_leak(out.current);
    out.leak_warning = out.support_leak > 1e-12;
    return out;
}

double source_scale(const VectorField& J, int p) {
    const auto& g = J.grid();
    auto s = synthesize_vector(J);
    const int npts = g->n_points();
    const int nt = g->n_theta(), np = g->n_phi();
    const double wphi = 2.0 * M_PI / np;
    double acc = 0.0;
    for (int j = 0; j < g->n_r(); ++j) {
        const double r = g->r_nodes()[j];
        const double wr = g->r_weights()[j] * r * r * std::pow(r, p);
        for (int i = 0; i < nt; ++i) {
            double rowacc = 0.0;
            for (int kk = 0; kk < np; ++kk) {
                const size_t q = (static_cast<size_t>(j) * nt + i) * np + kk;
                rowacc += std::sqrt(std::norm(s[q]) + std::norm(s[npts + q]) +
                                    std::norm(s[2 * size_t(npts) + q]));
            }
            acc += wr * g->theta_weights()[i] * wphi * rowacc;
        }
    }
    return acc;
}

// ---- CSV ----------------------------------------------------------------------

namespace {

void csv_row(std::ostream& os, int l, int m, double n_or_k, cplx v,
             const char* quantity) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%s\n", l, m, n_or_k,
                  v.real(), v.imag(), quantity);
    os << buf;
}

} // namespace

void write_csv_header(std::ostream& os) { os << "l,m,n_or_k,re,im,quantity\n"; }

void append_form_factors_csv(std::ostream& os, const FormFactorTable& t) {
    for (size_t i = 0; i < t.k_grid.size(); ++i) {
        csv_row(os, t.l, t.m, t.k_grid[i], t.Qdot[i], "Qdot");
        csv_row(os, t.l, t.m, t.k_grid[i], t.E[i], "E");
        csv_row(os, t.l, t.m, t.k_grid[i], t.M[i], "M");
    }
}

void append_moments_csv(std::ostream& os, const MomentSet& ms) {
    for (const auto& [lm, v] : ms.qdot0)
        csv_row(os, lm.first, lm.second, 0.0, v, "Qdot0");
    for (const auto& [lmn, v] : ms.qdot_radii)
        csv_row(os, std::get<0>(lmn), std::get<1>(lmn),
                static_cast<double>(std::get<2>(lmn)), v, "Qdot2n");
    for (const auto& [lmn, v] : ms.toroid)
        csv_row(os, std::get<0>(lmn), std::get<1>(lmn),
                static_cast<double>(std::get<2>(lmn)), v, "T2n");
    for (const auto& [lm, v] : ms.siegert_residual)
        csv_row(os, lm.first, lm.second, 0.0, cplx{v, 0.0}, "siegert_residual");
}

void write_form_factors_csv(std::ostream& os,
                            const std::vector<FormFactorTable>& tables) {
    write_csv_header(os);
    for (const auto& t : tables) append_form_factors_csv(os, t);
}

void write_moments_csv(std::ostream& os, const MomentSet& ms) {
    write_csv_header(os);
    append_moments_csv(os, ms);
}

} // namespace vsh
