#include "vsh/grid.hpp"

#include <algorithm>
#include <cmath>

#include "vsh/errors.hpp"

namespace vsh {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int k = 0; k < n; ++k) {
        // Newton from the Chebyshev-like initial guess; nodes descending in
        // this loop, stored ascending below.
        double xi = std::cos(M_PI * (4.0 * k + 3.0) / (4.0 * n + 2.0));
        double p = 0.0, dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double pm2 = 1.0, pm1 = xi;
            for (int j = 2; j <= n; ++j) {
                double pj = ((2 * j - 1) * xi * pm1 - (j - 1) * pm2) / j;
                pm2 = pm1;
                pm1 = pj;
            }
            p = pm1;
            dp = n * (xi * pm1 - pm2) / (xi * xi - 1.0);
            double dx = p / dp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // refresh dp at the converged node
        {
            double pm2 = 1.0, pm1 = xi;
            for (int j = 2; j <= n; ++j) {
                double pj = ((2 * j - 1) * xi * pm1 - (j - 1) * pm2) / j;
                pm2 = pm1;
                pm1 = pj;
            }
            dp = n * (xi * pm1 - pm2) / (xi * xi - 1.0);
        }
        x[n - 1 - k] = xi;
        w[n - 1 - k] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
    if (n == 1) {
        x[0] = 0.0;
        w[0] = 2.0;
    }
}

GridPtr SphericalGrid::make_ball(int l_max, int n_r, double r_max) {
    if (l_max < 0 || n_r < 2 || r_max <= 0.0)
        throw ConfigError("make_ball: need l_max >= 0, n_r >= 2, r_max > 0");
    auto g = std::shared_ptr<SphericalGrid>(new SphericalGrid());
    g->build(l_max, n_r, 0.0, r_max);
    return g;
}

GridPtr SphericalGrid::make_annulus(int l_max, int n_r, double r_lo,
                                    double r_max) {
    if (l_max < 0 || n_r < 2 || r_lo <= 0.0 || r_max <= r_lo)
        throw ConfigError("make_annulus: need 0 < r_lo < r_max, n_r >= 2");
    auto g = std::shared_ptr<SphericalGrid>(new SphericalGrid());
    g->build(l_max, n_r, r_lo, r_max);
    return g;
}

void SphericalGrid::build(int l_max, int n_r, double r_lo, double r_max) {
    l_max_ = l_max;
    n_r_ = n_r;
    r_lo_ = r_lo;
    r_max_ = r_max;
    n_theta_ = l_max + 1;
    n_phi_ = 2 * l_max + 1;
    tri_ = plm_tri_size(l_max);

    std::vector<double> x, w;
    gauss_legendre(n_r, x, w);
    r_nodes_.resize(n_r);
    r_weights_.resize(n_r);
    bary_.resize(n_r);
    const double half = 0.5 * (r_max - r_lo), mid = 0.5 * (r_max + r_lo);
    for (int i = 0; i < n_r; ++i) {
        r_nodes_[i] = mid + half * x[i];
        r_weights_[i] = half * w[i];
        // Wang-Xiang barycentric weights for Gauss nodes (common scale drops)
        bary_[i] = (i % 2 == 0 ? 1.0 : -1.0) *
                   std::sqrt((1.0 - x[i] * x[i]) * w[i]);
    }

    diff_.assign(static_cast<size_t>(n_r) * n_r, 0.0);
    for (int i = 0; i < n_r; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < n_r; ++j) {
            if (i == j) continue;
            double d = (bary_[j] / bary_[i]) / (r_nodes_[i] - r_nodes_[j]);
            diff_[i * n_r + j] = d;
            rowsum += d;
        }
        diff_[i * n_r + i] = -rowsum;
    }

    gauss_legendre(n_theta_, x, w);
    cos_theta_ = x;
    theta_weights_ = w;
    sin_theta_.resize(n_theta_);
    for (int i = 0; i < n_theta_; ++i)
        sin_theta_[i] = std::sqrt(1.0 - x[i] * x[i]);

    plm_.resize(static_cast<size_t>(n_theta_) * tri_);
    dplm_.resize(plm_.size());
    plm_over_sin_.resize(plm_.size());
    for (int i = 0; i < n_theta_; ++i) {
        double* p = plm_.data() + static_cast<size_t>(i) * tri_;
        normalized_plm_row(l_max, cos_theta_[i], sin_theta_[i],
                           {p, static_cast<size_t>(tri_)});
        double* dp = dplm_.data() + static_cast<size_t>(i) * tri_;
        double* ps = plm_over_sin_.data() + static_cast<size_t>(i) * tri_;
        const double ct = cos_theta_[i], st = sin_theta_[i];
        for (int l = 0; l <= l_max; ++l) {
            for (int m = 0; m <= l; ++m) {
                double plm = p[plm_tri_index(l, m)];
                double pl1 =
                    (l - 1 >= m) ? p[plm_tri_index(l - 1, m)] : 0.0;
                double c = std::sqrt(
                    (static_cast<double>(l) * l - static_cast<double>(m) * m) *
                    (2.0 * l + 1.0) / (2.0 * l - 1.0));
                dp[plm_tri_index(l, m)] = (l * ct * plm - c * pl1) / st;
                ps[plm_tri_index(l, m)] = plm / st;
            }
        }
    }
    green_cache_.resize(l_max + 1);
}

cplx SphericalGrid::interp_radial(std::span<const cplx> values,
                                  double r) const {
    cplx num{0.0};
    double den = 0.0;
    for (int i = 0; i < n_r_; ++i) {
        double d = r - r_nodes_[i];
        if (std::abs(d) < 1e-300) return values[i];
        double t = bary_[i] / d;
        num += t * values[i];
        den += t;
    }
    return num / den;
}

double SphericalGrid::interp_radial(std::span<const double> values,
                                    double r) const {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n_r_; ++i) {
        double d = r - r_nodes_[i];
        if (std::abs(d) < 1e-300) return values[i];
        double t = bary_[i] / d;
        num += t * values[i];
        den += t;
    }
    return num / den;
}

const std::vector<double>& SphericalGrid::green_matrix(int l) const {
    if (l < 0 || l > l_max_)
        throw ConfigError("green_matrix: degree outside grid band limit");
    std::lock_guard<std::mutex> lock(green_mutex_);
    auto& mat = green_cache_[l];
    if (!mat.empty()) return mat;

    // g(r) = -1/(2l+1) [ int_a^r (s/r)^{l+1} s f(s) ds
    //                  + int_r^R (r/s)^l s f(s) ds ],  a = r_lo.
    // Both integrands are bounded by s f(s); the ratio powers keep the
    // kernel well scaled for large l.
    mat.assign(static_cast<size_t>(n_r_) * n_r_, 0.0);
    const int m_sub = n_r_ + 8;
    std::vector<double> xs, ws;
    gauss_legendre(m_sub, xs, ws);

    std::vector<double> basis(n_r_);
    auto basis_at = [&](double s) {
        double den = 0.0;
        int hit = -1;
        for (int i = 0; i < n_r_; ++i) {
            double d = s - r_nodes_[i];
            if (std::abs(d) < 1e-300) {
                hit = i;
                break;
            }
            basis[i] = bary_[i] / d;
            den += basis[i];
        }
        if (hit >= 0) {
            std::fill(basis.begin(), basis.end(), 0.0);
            basis[hit] = 1.0;
        } else {
            for (int i = 0; i < n_r_; ++i) basis[i] /= den;
        }
    };

    const double pref = -1.0 / (2.0 * l + 1.0);
    for (int j = 0; j < n_r_; ++j) {
        const double rj = r_nodes_[j];
        // inner segment [r_lo, rj]
        {
            double hw = 0.5 * (rj - r_lo_), mid = 0.5 * (rj + r_lo_);
            for (int q = 0; q < m_sub; ++q) {
                double s = mid + hw * xs[q];
                double wq = hw * ws[q];
                double ker = std::pow(s / rj, l + 1) * s;
                basis_at(s);
                for (int i = 0; i < n_r_; ++i)
                    mat[j * n_r_ + i] += pref * wq * ker * basis[i];
            }
        }
        // outer segment [rj, r_max]
        {
            double hw = 0.5 * (r_max_ - rj), mid = 0.5 * (r_max_ + rj);
            for (int q = 0; q < m_sub; ++q) {
                double s = mid + hw * xs[q];
                double wq = hw * ws[q];
                double ker = std::pow(rj / s, l) * s;
                basis_at(s);
                for (int i = 0; i < n_r_; ++i)
                    mat[j * n_r_ + i] += pref * wq * ker * basis[i];
            }
        }
    }
    return mat;
}

// ---- fields ----------------------------------------------------------------

ScalarField::ScalarField(GridPtr grid)
    : grid_(std::move(grid)), nh_(grid_->n_harm()),
      c_(static_cast<size_t>(grid_->n_r()) * nh_, cplx{0.0}) {}

std::vector<cplx> ScalarField::profile(int h) const {
    std::vector<cplx> p(grid_->n_r());
    for (int j = 0; j < grid_->n_r(); ++j) p[j] = at(j, h);
    return p;
}

void ScalarField::set_profile(int h, std::span<const cplx> p) {
    for (int j = 0; j < grid_->n_r(); ++j) at(j, h) = p[j];
}

VectorField::VectorField(GridPtr grid)
    : grid_(std::move(grid)), nj_(grid_->n_r()), nh_(grid_->n_harm()),
      c_(static_cast<size_t>(3) * nj_ * nh_, cplx{0.0}) {}

std::vector<cplx> VectorField::profile(Channel c, int h) const {
    std::vector<cplx> p(nj_);
    for (int j = 0; j < nj_; ++j) p[j] = at(c, j, h);
    return p;
}

void VectorField::set_profile(Channel c, int h, std::span<const cplx> p) {
    for (int j = 0; j < nj_; ++j) at(c, j, h) = p[j];
}

namespace {
void check_same_grid(const GridPtr& a, const GridPtr& b) {
    if (!a || !b || !a->same_as(*b))
        throw LayoutError("fields live on different grids");
}
} // namespace

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    check_same_grid(grid_, o.grid());
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}
ScalarField& ScalarField::operator-=(const ScalarField& o) {
    check_same_grid(grid_, o.grid());
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}
ScalarField& ScalarField::operator*=(cplx s) {
    for (auto& v : c_) v *= s;
    return *this;
}
VectorField& VectorField::operator+=(const VectorField& o) {
    check_same_grid(grid_, o.grid());
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}
VectorField& VectorField::operator-=(const VectorField& o) {
    check_same_grid(grid_, o.grid());
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}
VectorField& VectorField::operator*=(cplx s) {
    for (auto& v : c_) v *= s;
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(cplx s, ScalarField a) { return a *= s; }
VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(cplx s, VectorField a) { return a *= s; }

// ---- transforms ------------------------------------------------------------

namespace {

inline double sigma_m(int m) { return (m < 0 && (m & 1)) ? -1.0 : 1.0; }

// per-shell workspace for the phi transform
struct PhiPhase {
    int n_phi, l_max;
    std::vector<cplx> e; // e[(m)*(n_phi)+k] = exp(i m phi_k), m in 0..l_max
    explicit PhiPhase(const SphericalGrid& g)
        : n_phi(g.n_phi()), l_max(g.l_max()),
          e(static_cast<size_t>(l_max + 1) * n_phi) {
        for (int m = 0; m <= l_max; ++m)
            for (int k = 0; k < n_phi; ++k)
                e[m * n_phi + k] = std::polar(1.0, m * g.phi(k));
    }
    cplx fwd(int m, int k) const { // exp(-i m phi_k)
        return m >= 0 ? std::conj(e[m * n_phi + k]) : e[-m * n_phi + k];
    }
    cplx bwd(int m, int k) const { // exp(+i m phi_k)
        return m >= 0 ? e[m * n_phi + k] : std::conj(e[-m * n_phi + k]);
    }
};

} // namespace

ScalarField analyze_scalar(const GridPtr& grid, std::span<const cplx> samples) {
    if (static_cast<int>(samples.size()) != grid->n_points())
        throw LayoutError("analyze_scalar: sample count does not match grid");
    const int L = grid->l_max(), nt = grid->n_theta(), np = grid->n_phi();
    const double wphi = 2.0 * M_PI / np;
    PhiPhase ph(*grid);
    ScalarField out(grid);

#pragma omp parallel for schedule(static)
    for (int j = 0; j < grid->n_r(); ++j) {
        std::vector<cplx> fm(static_cast<size_t>(nt) * (2 * L + 1), cplx{0.0});
        for (int i = 0; i < nt; ++i) {
            const cplx* row = samples.data() + (j * nt + i) * np;
            for (int m = -L; m <= L; ++m) {
                cplx acc{0.0};
                for (int k = 0; k < np; ++k) acc += row[k] * ph.fwd(m, k);
                fm[i * (2 * L + 1) + (m + L)] = acc * wphi;
            }
        }
        for (int l = 0; l <= L; ++l) {
            for (int m = -l; m <= l; ++m) {
                const int ma = std::abs(m), t = plm_tri_index(l, ma);
                cplx acc{0.0};
                for (int i = 0; i < nt; ++i)
                    acc += grid->theta_weights()[i] * grid->plm_row(i)[t] *
                           fm[i * (2 * L + 1) + (m + L)];
                out.at(j, l * (l + 1) + m) = sigma_m(m) * acc;
            }
        }
    }
    return out;
}

std::vector<cplx> synthesize_scalar(const ScalarField& f) {
    const auto& grid = f.grid();
    const int L = grid->l_max(), nt = grid->n_theta(), np = grid->n_phi();
    PhiPhase ph(*grid);
    std::vector<cplx> out(grid->n_points());

#pragma omp parallel for schedule(static)
    for (int j = 0; j < grid->n_r(); ++j) {
        std::vector<cplx> gm(static_cast<size_t>(nt) * (2 * L + 1), cplx{0.0});
        for (int l = 0; l <= L; ++l) {
            for (int m = -l; m <= l; ++m) {
                const cplx c = sigma_m(m) * f.at(j, l * (l + 1) + m);
                const int t = plm_tri_index(l, std::abs(m));
                for (int i = 0; i < nt; ++i)
                    gm[i * (2 * L + 1) + (m + L)] += c * grid->plm_row(i)[t];
            }
        }
        for (int i = 0; i < nt; ++i) {
            cplx* row = out.data() + (static_cast<size_t>(j) * nt + i) * np;
            for (int k = 0; k < np; ++k) {
                cplx acc{0.0};
                for (int m = -L; m <= L; ++m)
                    acc += gm[i * (2 * L + 1) + (m + L)] * ph.bwd(m, k);
                row[k] = acc;
            }
        }
    }
    return out;
}

VectorField analyze_vector(const GridPtr& grid, std::span<const cplx> samples) {
    if (static_cast<int>(samples.size()) != 3 * grid->n_points())
        throw LayoutError("analyze_vector: sample count does not match grid");
    const int L = grid->l_max(), nt = grid->n_theta(), np = grid->n_phi();
    const int npts = grid->n_points();
    const double wphi = 2.0 * M_PI / np;
    PhiPhase ph(*grid);
    VectorField out(grid);

#pragma omp parallel for schedule(static)
    for (int j = 0; j < grid->n_r(); ++j) {
        const int nm = 2 * L + 1;
        std::vector<cplx> fr(static_cast<size_t>(nt) * nm, cplx{0.0});
        std::vector<cplx> ft(fr.size(), cplx{0.0}), fp(fr.size(), cplx{0.0});
        std::vector<cplx> vr(np), vt(np), vp(np);
        for (int i = 0; i < nt; ++i) {
            const double ct = grid->cos_theta()[i], st = grid->sin_theta()[i];
            const size_t base = (static_cast<size_t>(j) * nt + i) * np;
            for (int k = 0; k < np; ++k) {
                const double cp = std::cos(grid->phi(k)),
                             sp = std::sin(grid->phi(k));
                cplx vx = samples[base + k];
                cplx vy = samples[npts + base + k];
                cplx vz = samples[2 * static_cast<size_t>(npts) + base + k];
                vr[k] = st * cp * vx + st * sp * vy + ct * vz;
                vt[k] = ct * cp * vx + ct * sp * vy - st * vz;
                vp[k] = -sp * vx + cp * vy;
            }
            for (int m = -L; m <= L; ++m) {
                cplx ar{0.0}, at{0.0}, apv{0.0};
                for (int k = 0; k < np; ++k) {
                    cplx w = ph.fwd(m, k);
                    ar += vr[k] * w;
                    at += vt[k] * w;
                    apv += vp[k] * w;
                }
                fr[i * nm + (m + L)] = ar * wphi;
                ft[i * nm + (m + L)] = at * wphi;
                fp[i * nm + (m + L)] = apv * wphi;
            }
        }
        const cplx I{0.0, 1.0};
        for (int l = 0; l <= L; ++l) {
            const double kappa = static_cast<double>(l) * (l + 1);
            const double inv_sq = l > 0 ? 1.0 / std::sqrt(kappa) : 0.0;
            for (int m = -l; m <= l; ++m) {
                const int ma = std::abs(m), t = plm_tri_index(l, ma);
                const double sg = sigma_m(m);
                cplx accR{0.0}, accS{0.0}, accT{0.0};
                for (int i = 0; i < nt; ++i) {
                    const double w = grid->theta_weights()[i];
                    const double plm = grid->plm_row(i)[t];
                    const double dplm = grid->dplm_row(i)[t];
                    const double pos = grid->plm_over_sin_row(i)[t];
                    const cplx a = ft[i * nm + (m + L)];
                    const cplx b = fp[i * nm + (m + L)];
                    accR += w * plm * fr[i * nm + (m + L)];
                    accS += w * (dplm * a - I * static_cast<double>(m) * pos * b);
                    accT += w * (-I * static_cast<double>(m) * pos * a - dplm * b);
                }
                const int h = l * (l + 1) + m;
                out.at(Channel::R, j, h) = sg * accR;
                if (l > 0) {
                    out.at(Channel::S, j, h) = sg * inv_sq * accS;
                    out.at(Channel::T, j, h) = sg * inv_sq * accT;
                }
            }
        }
    }
    return out;
}

std::vector<cplx> synthesize_vector(const VectorField& f) {
    const auto& grid = f.grid();
    const int L = grid->l_max(), nt = grid->n_theta(), np = grid->n_phi();
    const int npts = grid->n_points();
    PhiPhase ph(*grid);
    std::vector<cplx> out(static_cast<size_t>(3) * npts);

#pragma omp parallel for schedule(static)
    for (int j = 0; j < grid->n_r(); ++j) {
        const int nm = 2 * L + 1;
        std::vector<cplx> gr(static_cast<size_t>(nt) * nm, cplx{0.0});
        std::vector<cplx> gt(gr.size(), cplx{0.0}), gp(gr.size(), cplx{0.0});
        const cplx I{0.0, 1.0};
        for (int l = 0; l <= L; ++l) {
            const double kappa = static_cast<double>(l) * (l + 1);
            const double inv_sq = l > 0 ? 1.0 / std::sqrt(kappa) : 0.0;
            for (int m = -l; m <= l; ++m) {
                const int h = l * (l + 1) + m, t = plm_tri_index(l, std::abs(m));
                const double sg = sigma_m(m);
                const cplx R = sg * f.at(Channel::R, j, h);
                const cplx S = sg * f.at(Channel::S, j, h) * inv_sq;
                const cplx T = sg * f.at(Channel::T, j, h) * inv_sq;
                for (int i = 0; i < nt; ++i) {
                    const double plm = grid->plm_row(i)[t];
                    const double dplm = grid->dplm_row(i)[t];
                    const double pos = grid->plm_over_sin_row(i)[t];
                    gr[i * nm + (m + L)] += R * plm;
                    gt[i * nm + (m + L)] +=
                        S * dplm + T * I * static_cast<double>(m) * pos;
                    gp[i * nm + (m + L)] +=
                        S * I * static_cast<double>(m) * pos - T * dplm;
                }
            }
        }
        for (int i = 0; i < nt; ++i) {
            const double ct = grid->cos_theta()[i], st = grid->sin_theta()[i];
            const size_t base = (static_cast<size_t>(j) * nt + i) * np;
            for (int k = 0; k < np; ++k) {
                cplx vr{0.0}, vt{0.0}, vp{0.0};
                for (int m = -L; m <= L; ++m) {
                    const cplx w = ph.bwd(m, k);
                    vr += gr[i * nm + (m + L)] * w;
                    vt += gt[i * nm + (m + L)] * w;
                    vp += gp[i * nm + (m + L)] * w;
                }
                const double cp = std::cos(grid->phi(k)),
                             sp = std::sin(grid->phi(k));
                out[base + k] = st * cp * vr + ct * cp * vt - sp * vp;
                out[npts + base + k] = st * sp * vr + ct * sp * vt + cp * vp;
                out[2 * static_cast<size_t>(npts) + base + k] =
                    ct * vr - st * vt;
            }
        }
    }
    return out;
}

// ---- quadrature ------------------------------------------------------------

cplx integrate_volume(const ScalarField& f) {
    const auto& g = f.grid();
    const double sqrt4pi = 3.5449077018110318;
    cplx acc{0.0};
    for (int j = 0; j < g->n_r(); ++j)
        acc += g->r_weights()[j] * g->r_nodes()[j] * g->r_nodes()[j] *
               f.at(j, 0);
    return sqrt4pi * acc;
}

cplx integrate_volume_samples(const GridPtr& g, std::span<const cplx> s) {
    if (static_cast<int>(s.size()) != g->n_points())
        throw LayoutError("integrate_volume_samples: bad sample count");
    const int nt = g->n_theta(), np = g->n_phi();
    const double wphi = 2.0 * M_PI / np;
    cplx acc{0.0};
    for (int j = 0; j < g->n_r(); ++j) {
        const double wr =
            g->r_weights()[j] * g->r_nodes()[j] * g->r_nodes()[j];
        for (int i = 0; i < nt; ++i) {
            cplx rowacc{0.0};
            const cplx* row = s.data() + (static_cast<size_t>(j) * nt + i) * np;
            for (int k = 0; k < np; ++k) rowacc += row[k];
            acc += wr * g->theta_weights()[i] * wphi * rowacc;
        }
    }
    return acc;
}

cplx dot(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a.grid(), b.grid());
    const auto& g = a.grid();
    cplx acc{0.0};
    for (int j = 0; j < g->n_r(); ++j) {
        const double w =
            g->r_weights()[j] * g->r_nodes()[j] * g->r_nodes()[j];
        cplx s{0.0};
        for (int h = 0; h < g->n_harm(); ++h)
            s += std::conj(a.at(j, h)) * b.at(j, h);
        acc += w * s;
    }
    return acc;
}

cplx dot(const VectorField& a, const VectorField& b) {
    check_same_grid(a.grid(), b.grid());
    const auto& g = a.grid();
    cplx acc{0.0};
    for (int c = 0; c < 3; ++c) {
        for (int j = 0; j < g->n_r(); ++j) {
            const double w =
                g->r_weights()[j] * g->r_nodes()[j] * g->r_nodes()[j];
            cplx s{0.0};
            for (int h = 0; h < g->n_harm(); ++h)
                s += std::conj(a.at(static_cast<Channel>(c), j, h)) *
                     b.at(static_cast<Channel>(c), j, h);
            acc += w * s;
        }
    }
    return acc;
}

double norm(const ScalarField& f) { return std::sqrt(std::abs(dot(f, f))); }
double norm(const VectorField& f) { return std::sqrt(std::abs(dot(f, f))); }

ScalarField pointwise_product(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a.grid(), b.grid());
    auto sa = synthesize_scalar(a);
    auto sb = synthesize_scalar(b);
    for (size_t i = 0; i < sa.size(); ++i) sa[i] *= sb[i];
    return analyze_scalar(a.grid(), sa);
}

double boundary_leak(const ScalarField& f) {
    const auto& g = f.grid();
    double peak = 0.0, edge = 0.0;
    for (int j = 0; j < g->n_r(); ++j)
        for (int h = 0; h < g->n_harm(); ++h)
            peak = std::max(peak, std::abs(f.at(j, h)));
    for (int h = 0; h < g->n_harm(); ++h)
        edge = std::max(edge, std::abs(f.at(g->n_r() - 1, h)));
    return peak > 0.0 ? edge / peak : 0.0;
}

double boundary_leak(const VectorField& f) {
    const auto& g = f.grid();
    double peak = 0.0, edge = 0.0;
    for (int c = 0; c < 3; ++c)
        for (int j = 0; j < g->n_r(); ++j)
            for (int h = 0; h < g->n_harm(); ++h) {
                double v = std::abs(f.at(static_cast<Channel>(c), j, h));
                peak = std::max(peak, v);
                if (j == g->n_r() - 1) edge = std::max(edge, v);
            }
    return peak > 0.0 ? edge / peak : 0.0;
}

} // namespace vsh
