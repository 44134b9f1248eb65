#include "vsh/reference.hpp"

#include <cmath>

#include "vsh/errors.hpp"

namespace vsh::ref {

namespace {

struct PointBasis {
    // orthonormal channel basis at one direction: Y rhat, grad_S Y/sqrt(k),
    // L Y/sqrt(k), Cartesian components
    std::array<cplx, 3> p, s, t;
    cplx y;
};

PointBasis basis_at(int l, int m, double theta, double phi) {
    PointBasis b{};
    b.y = eval_ylm({l, m}, theta, phi);
    const std::array<double, 3> rhat{std::sin(theta) * std::cos(phi),
                                     std::sin(theta) * std::sin(phi),
                                     std::cos(theta)};
    for (int i = 0; i < 3; ++i) b.p[i] = b.y * rhat[i];
    if (l == 0) return b;
    auto ly = eval_l_ylm({l, m}, theta, phi);
    const double inv = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    b.t = {ly[0] * inv, ly[1] * inv, ly[2] * inv};
    b.s = {(rhat[1] * ly[2] - rhat[2] * ly[1]) * inv,
           (rhat[2] * ly[0] - rhat[0] * ly[2]) * inv,
           (rhat[0] * ly[1] - rhat[1] * ly[0]) * inv};
    return b;
}

} // namespace

ScalarField analyze_scalar(const GridPtr& grid, std::span<const cplx> samples) {
    if (static_cast<int>(samples.size()) != grid->n_points())
        throw LayoutError("ref::analyze_scalar: bad sample count");
    const int nt = grid->n_theta(), np = grid->n_phi();
    const double wphi = 2.0 * M_PI / np;
    ScalarField out(grid);
    for (int j = 0; j < grid->n_r(); ++j)
        for (int i = 0; i < nt; ++i) {
            const double th = std::acos(grid->cos_theta()[i]);
            const double w = grid->theta_weights()[i] * wphi;
            for (int k = 0; k < np; ++k) {
                const cplx v = samples[(static_cast<size_t>(j) * nt + i) * np + k];
                for (int h = 0; h < grid->n_harm(); ++h) {
                    auto idx = HarmonicIndex::from_flat(h);
                    out.at(j, h) +=
                        w * std::conj(eval_ylm(idx, th, grid->phi(k))) * v;
                }
            }
        }
    return out;
}

std::vector<cplx> synthesize_scalar(const ScalarField& f) {
    const auto& grid = f.grid();
    const int nt = grid->n_theta(), np = grid->n_phi();
    std::vector<cplx> out(grid->n_points(), cplx{0.0});
    for (int j = 0; j < grid->n_r(); ++j)
        for (int i = 0; i < nt; ++i) {
            const double th = std::acos(grid->cos_theta()[i]);
            for (int k = 0; k < np; ++k) {
                cplx acc{0.0};
                for (int h = 0; h < grid->n_harm(); ++h)
                    acc += f.at(j, h) *
                           eval_ylm(HarmonicIndex::from_flat(h), th,
                                    grid->phi(k));
                out[(static_cast<size_t>(j) * nt + i) * np + k] = acc;
            }
        }
    return out;
}

VectorField analyze_vector(const GridPtr& grid, std::span<const cplx> samples) {
    if (static_cast<int>(samples.size()) != 3 * grid->n_points())
        throw LayoutError("ref::analyze_vector: bad sample count");
    const int nt = grid->n_theta(), np = grid->n_phi();
    const int npts = grid->n_points();
    const double wphi = 2.0 * M_PI / np;
    VectorField out(grid);
    for (int j = 0; j < grid->n_r(); ++j)
        for (int i = 0; i < nt; ++i) {
            const double th = std::acos(grid->cos_theta()[i]);
            const double w = grid->theta_weights()[i] * wphi;
            for (int k = 0; k < np; ++k) {
                const size_t p = (static_cast<size_t>(j) * nt + i) * np + k;
                const std::array<cplx, 3> v{samples[p], samples[npts + p],
                                            samples[2 * size_t(npts) + p]};
                for (int h = 0; h < grid->n_harm(); ++h) {
                    auto idx = HarmonicIndex::from_flat(h);
                    auto b = basis_at(idx.l, idx.m, th, grid->phi(k));
                    cplx pr{0.0}, sr{0.0}, tr{0.0};
                    for (int c = 0; c < 3; ++c) {
                        pr += std::conj(b.p[c]) * v[c];
                        sr += std::conj(b.s[c]) * v[c];
                        tr += std::conj(b.t[c]) * v[c];
                    }
                    out.at(Channel::R, j, h) += w * pr;
                    if (idx.l > 0) {
                        out.at(Channel::S, j, h) += w * sr;
                        out.at(Channel::T, j, h) += w * tr;
                    }
                }
            }
        }
    return out;
}

std::vector<cplx> synthesize_vector(const VectorField& f) {
    const auto& grid = f.grid();
    const int nt = grid->n_theta(), np = grid->n_phi();
    const int npts = grid->n_points();
    std::vector<cplx> out(static_cast<size_t>(3) * npts, cplx{0.0});
    for (int j = 0; j < grid->n_r(); ++j)
        for (int i = 0; i < nt; ++i) {
            const double th = std::acos(grid->cos_theta()[i]);
            for (int k = 0; k < np; ++k) {
                const size_t p = (static_cast<size_t>(j) * nt + i) * np + k;
                std::array<cplx, 3> acc{};
                for (int h = 0; h < grid->n_harm(); ++h) {
                    auto idx = HarmonicIndex::from_flat(h);
                    auto b = basis_at(idx.l, idx.m, th, grid->phi(k));
                    for (int c = 0; c < 3; ++c)
                        acc[c] += f.at(Channel::R, j, h) * b.p[c] +
                                  f.at(Channel::S, j, h) * b.s[c] +
                                  f.at(Channel::T, j, h) * b.t[c];
                }
                for (int c = 0; c < 3; ++c)
                    out[c * static_cast<size_t>(npts) + p] = acc[c];
            }
        }
    return out;
}

} // namespace vsh::ref
