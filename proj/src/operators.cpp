#include "vsh/operators.hpp"

#include <cmath>

#include "vsh/errors.hpp"

namespace vsh {

namespace {

// y[j] = sum_i D[j][i] x[i] for one strided profile
void apply_matrix_profile(const std::vector<double>& mat, int n,
                          const std::vector<cplx>& in, std::vector<cplx>& out) {
    for (int j = 0; j < n; ++j) {
        cplx acc{0.0};
        const double* row = mat.data() + static_cast<size_t>(j) * n;
        for (int i = 0; i < n; ++i) acc += row[i] * in[i];
        out[j] = acc;
    }
}

double sqrt_kappa(int l) { return std::sqrt(static_cast<double>(l) * (l + 1)); }

} // namespace

ScalarField radial_derivative(const ScalarField& f) {
    const auto& g = f.grid();
    const int n = g->n_r();
    ScalarField out(g);
#pragma omp parallel for schedule(static)
    for (int h = 0; h < g->n_harm(); ++h) {
        std::vector<cplx> in = f.profile(h), o(n);
        apply_matrix_profile(g->radial_diff_matrix(), n, in, o);
        out.set_profile(h, o);
    }
    return out;
}

VectorField gradient(const ScalarField& f) {
    const auto& g = f.grid();
    const int n = g->n_r();
    VectorField out(g);
#pragma omp parallel for schedule(static)
    for (int h = 0; h < g->n_harm(); ++h) {
        const int l = HarmonicIndex::from_flat(h).l;
        std::vector<cplx> in = f.profile(h), d(n);
        apply_matrix_profile(g->radial_diff_matrix(), n, in, d);
        for (int j = 0; j < n; ++j) {
            out.at(Channel::R, j, h) = d[j];
            if (l > 0)
                out.at(Channel::S, j, h) =
                    sqrt_kappa(l) * in[j] / g->r_nodes()[j];
        }
    }
    return out;
}

ScalarField divergence(const VectorField& v) {
    const auto& g = v.grid();
    const int n = g->n_r();
    ScalarField out(g);
#pragma omp parallel for schedule(static)
    for (int h = 0; h < g->n_harm(); ++h) {
        const int l = HarmonicIndex::from_flat(h).l;
        std::vector<cplx> a = v.profile(Channel::R, h), d(n);
        apply_matrix_profile(g->radial_diff_matrix(), n, a, d);
        for (int j = 0; j < n; ++j) {
            const double r = g->r_nodes()[j];
            cplx val = d[j] + 2.0 * a[j] / r;
            if (l > 0) val -= sqrt_kappa(l) * v.at(Channel::S, j, h) / r;
            out.at(j, h) = val;
        }
    }
    return out;
}

VectorField curl(const VectorField& v) {
    const auto& g = v.grid();
    const int n = g->n_r();
    VectorField out(g);
#pragma omp parallel for schedule(static)
    for (int h = 0; h < g->n_harm(); ++h) {
        const int l = HarmonicIndex::from_flat(h).l;
        if (l == 0) continue; // l = 0 has no tangential channels and no curl
        const double sk = sqrt_kappa(l);
        std::vector<cplx> a = v.profile(Channel::R, h);
        std::vector<cplx> b = v.profile(Channel::S, h);
        std::vector<cplx> c = v.profile(Channel::T, h);
        std::vector<cplx> db(n), dc(n);
        apply_matrix_profile(g->radial_diff_matrix(), n, b, db);
        apply_matrix_profile(g->radial_diff_matrix(), n, c, dc);
        for (int j = 0; j < n; ++j) {
            const double r = g->r_nodes()[j];
            out.at(Channel::R, j, h) = sk * c[j] / r;
            out.at(Channel::S, j, h) = dc[j] + c[j] / r;
            out.at(Channel::T, j, h) = sk * a[j] / r - db[j] - b[j] / r;
        }
    }
    return out;
}

ScalarField laplacian(const ScalarField& f) {
    const auto& g = f.grid();
    const int n = g->n_r();
    ScalarField out(g);
#pragma omp parallel for schedule(static)
    for (int h = 0; h < g->n_harm(); ++h) {
        const int l = HarmonicIndex::from_flat(h).l;
        const double kappa = static_cast<double>(l) * (l + 1);
        std::vector<cplx> in = f.profile(h), d(n), dd(n);
        apply_matrix_profile(g->radial_diff_matrix(), n, in, d);
        apply_matrix_profile(g->radial_diff_matrix(), n, d, dd);
        for (int j = 0; j < n; ++j) {
            const double r = g->r_nodes()[j];
            out.at(j, h) = dd[j] + 2.0 * d[j] / r - kappa * in[j] / (r * r);
        }
    }
    return out;
}

VectorField apply_L(const ScalarField& f) {
    const auto& g = f.grid();
    VectorField out(g);
    for (int h = 0; h < g->n_harm(); ++h) {
        const int l = HarmonicIndex::from_flat(h).l;
        if (l == 0) continue;
        const double sk = sqrt_kappa(l);
        for (int j = 0; j < g->n_r(); ++j)
            out.at(Channel::T, j, h) = sk * f.at(j, h);
    }
    return out;
}

VectorField apply_N(const ScalarField& f) { return curl(apply_L(f)); }

VectorField apply_M(const ScalarField& f) {
    const auto& g = f.grid();
    VectorField out(g);
    for (int h = 0; h < g->n_harm(); ++h) {
        const int l = HarmonicIndex::from_flat(h).l;
        if (l == 0) continue;
        const double sk = sqrt_kappa(l);
        for (int j = 0; j < g->n_r(); ++j)
            out.at(Channel::S, j, h) = -sk * g->r_nodes()[j] * f.at(j, h);
    }
    return out;
}

ScalarField dot_with_r(const VectorField& v) {
    const auto& g = v.grid();
    ScalarField out(g);
    for (int h = 0; h < g->n_harm(); ++h)
        for (int j = 0; j < g->n_r(); ++j)
            out.at(j, h) = g->r_nodes()[j] * v.at(Channel::R, j, h);
    return out;
}

VectorField cross_with_r(const VectorField& v) {
    const auto& g = v.grid();
    VectorField out(g);
    for (int h = 0; h < g->n_harm(); ++h)
        for (int j = 0; j < g->n_r(); ++j) {
            const double r = g->r_nodes()[j];
            out.at(Channel::S, j, h) = r * v.at(Channel::T, j, h);
            out.at(Channel::T, j, h) = -r * v.at(Channel::S, j, h);
        }
    return out;
}

ScalarField multiply_radial_power(const ScalarField& f, int p) {
    const auto& g = f.grid();
    ScalarField out(g);
    for (int h = 0; h < g->n_harm(); ++h)
        for (int j = 0; j < g->n_r(); ++j)
            out.at(j, h) = std::pow(g->r_nodes()[j], p) * f.at(j, h);
    return out;
}

VectorField multiply_radial_power(const VectorField& f, int p) {
    const auto& g = f.grid();
    VectorField out(g);
    for (int c = 0; c < 3; ++c)
        for (int h = 0; h < g->n_harm(); ++h)
            for (int j = 0; j < g->n_r(); ++j)
                out.at(static_cast<Channel>(c), j, h) =
                    std::pow(g->r_nodes()[j], p) *
                    f.at(static_cast<Channel>(c), j, h);
    return out;
}

ScalarField radial_scaling(const ScalarField& f) {
    const auto& g = f.grid();
    ScalarField d = radial_derivative(f), out(g);
    for (int h = 0; h < g->n_harm(); ++h)
        for (int j = 0; j < g->n_r(); ++j)
            out.at(j, h) = g->r_nodes()[j] * d.at(j, h);
    return out;
}

namespace {

// coordinate samples on the grid, axis 0/1/2 -> x/y/z
std::vector<double> coordinate_samples(const SphericalGrid& g, int axis) {
    std::vector<double> out(g.n_points());
    for (int j = 0; j < g.n_r(); ++j)
        for (int i = 0; i < g.n_theta(); ++i) {
            const double st = g.sin_theta()[i], ct = g.cos_theta()[i];
            for (int k = 0; k < g.n_phi(); ++k) {
                double v;
                if (axis == 0)
                    v = st * std::cos(g.phi(k));
                else if (axis == 1)
                    v = st * std::sin(g.phi(k));
                else
                    v = ct;
                out[(static_cast<size_t>(j) * g.n_theta() + i) * g.n_phi() + k] =
                    g.r_nodes()[j] * v;
            }
        }
    return out;
}

} // namespace

ScalarField multiply_coordinate(const ScalarField& f, int axis) {
    auto s = synthesize_scalar(f);
    auto c = coordinate_samples(*f.grid(), axis);
    for (size_t i = 0; i < s.size(); ++i) s[i] *= c[i];
    return analyze_scalar(f.grid(), s);
}

ScalarField extract_component(const VectorField& v, int axis) {
    auto s = synthesize_vector(v);
    const size_t n = v.grid()->n_points();
    return analyze_scalar(v.grid(),
                          std::span<const cplx>(s.data() + axis * n, n));
}

VectorField vector_from_components(const ScalarField& x, const ScalarField& y,
                                   const ScalarField& z) {
    const auto& g = x.grid();
    if (!g->same_as(*y.grid()) || !g->same_as(*z.grid()))
        throw LayoutError("vector_from_components: mixed grids");
    const size_t n = g->n_points();
    std::vector<cplx> s(3 * n);
    auto sx = synthesize_scalar(x), sy = synthesize_scalar(y),
         sz = synthesize_scalar(z);
    std::copy(sx.begin(), sx.end(), s.begin());
    std::copy(sy.begin(), sy.end(), s.begin() + n);
    std::copy(sz.begin(), sz.end(), s.begin() + 2 * n);
    return analyze_vector(g, s);
}

VectorField multiply_position(const ScalarField& f) {
    const auto& g = f.grid();
    auto s = synthesize_scalar(f);
    const size_t n = g->n_points();
    std::vector<cplx> out(3 * n);
    for (int axis = 0; axis < 3; ++axis) {
        auto c = coordinate_samples(*g, axis);
        for (size_t i = 0; i < n; ++i) out[axis * n + i] = c[i] * s[i];
    }
    return analyze_vector(g, out);
}

VectorField laplacian_vector(const VectorField& v) {
    auto fx = laplacian(extract_component(v, 0));
    auto fy = laplacian(extract_component(v, 1));
    auto fz = laplacian(extract_component(v, 2));
    return vector_from_components(fx, fy, fz);
}

InverseLaplacianResult inverse_laplacian(const ScalarField& f,
                                         double leak_tol) {
    const auto& g = f.grid();
    const int n = g->n_r();
    InverseLaplacianResult res;
    res.value = ScalarField(g);
    res.support_leak = boundary_leak(f);
    res.leak_warning = res.support_leak > leak_tol;
#pragma omp parallel for schedule(static)
    for (int h = 0; h < g->n_harm(); ++h) {
        const int l = HarmonicIndex::from_flat(h).l;
        const auto& mat = g->green_matrix(l);
        std::vector<cplx> in = f.profile(h), o(n);
        apply_matrix_profile(mat, n, in, o);
        res.value.set_profile(h, o);
    }
    return res;
}

ScalarField inverse_laplacian_value(const ScalarField& f) {
    return inverse_laplacian(f).value;
}

ScalarField inverse_L2(const ScalarField& f, double gauge_tol,
                       double reference_norm) {
    const auto& g = f.grid();
    double total = norm(f);
    double mono = 0.0;
    for (int j = 0; j < g->n_r(); ++j)
        mono += g->r_weights()[j] * g->r_nodes()[j] * g->r_nodes()[j] *
                std::norm(f.at(j, 0));
    mono = std::sqrt(mono);
    if (mono > gauge_tol * std::max({total, reference_norm, 1e-300}))
        throw GaugeViolationError(
            "inverse_L2: l = 0 content violates the gauge precondition "
            "(|f_00| = " +
            std::to_string(mono) + ", |f| = " + std::to_string(total) + ")");
    ScalarField out(g);
    for (int h = 1; h < g->n_harm(); ++h) {
        const int l = HarmonicIndex::from_flat(h).l;
        const double ev = -1.0 / (static_cast<double>(l) * (l + 1));
        for (int j = 0; j < g->n_r(); ++j) out.at(j, h) = ev * f.at(j, h);
    }
    return out;
}

cplx profile_value(const ScalarField& f, int h, double r) {
    auto p = f.profile(h);
    return f.grid()->interp_radial(p, r);
}

} // namespace vsh
