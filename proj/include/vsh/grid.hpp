#pragma once

// Spectral representation of scalar and vector fields on a ball (or annulus)
// of outer radius r_max:
//
//   * radial: Gauss-Legendre nodes mapped to (r_lo, r_max], interior nodes
//     only, so the coordinate origin is never touched;
//   * angular: n_theta >= l_max+1 Gauss-Legendre colatitudes (exact for
//     products of harmonics up to degree 2 l_max) and n_phi >= 2 l_max+1
//     uniform longitudes.
//
// A VectorField holds three spectral channels per (l,m) per shell. At a
// direction rhat the field is
//
//   sum_lm [ R_lm Y_lm rhat + S_lm grad_S Y_lm / sqrt(l(l+1))
//                           + T_lm L Y_lm / sqrt(l(l+1)) ]
//
// with grad_S the unit-sphere tangential gradient and L = -r x grad.
// Coefficient memory order is channel-major, then shell, then flat harmonic
// index h = l(l+1)+m; the vsf-1 file format relies on this order.

#include <complex>
#include <memory>
#include <mutex>
#include <span>
#include <variant>
#include <vector>

#include "vsh/harmonics.hpp"

namespace vsh {

class SphericalGrid;
using GridPtr = std::shared_ptr<const SphericalGrid>;

class SphericalGrid {
  public:
    static GridPtr make_ball(int l_max, int n_r, double r_max);
    static GridPtr make_annulus(int l_max, int n_r, double r_lo, double r_max);

    int l_max() const { return l_max_; }
    int n_r() const { return n_r_; }
    int n_theta() const { return n_theta_; }
    int n_phi() const { return n_phi_; }
    int n_harm() const { return (l_max_ + 1) * (l_max_ + 1); }
    int n_points() const { return n_r_ * n_theta_ * n_phi_; }
    double r_lo() const { return r_lo_; }
    double r_max() const { return r_max_; }
    bool is_ball() const { return r_lo_ == 0.0; }

    const std::vector<double>& r_nodes() const { return r_nodes_; }
    const std::vector<double>& r_weights() const { return r_weights_; }
    const std::vector<double>& cos_theta() const { return cos_theta_; }
    const std::vector<double>& sin_theta() const { return sin_theta_; }
    const std::vector<double>& theta_weights() const { return theta_weights_; }
    double phi(int k) const { return 2.0 * M_PI * k / n_phi_; }

    // angular basis tables at colatitude node i, triangular (l,m>=0) layout
    const double* plm_row(int i) const { return plm_.data() + i * tri_; }
    const double* dplm_row(int i) const { return dplm_.data() + i * tri_; }
    const double* plm_over_sin_row(int i) const {
        return plm_over_sin_.data() + i * tri_;
    }

    // spectral differentiation d/dr on the radial nodes (barycentric)
    const std::vector<double>& radial_diff_matrix() const { return diff_; }
    // interpolate node values to an arbitrary radius
    cplx interp_radial(std::span<const cplx> values, double r) const;
    double interp_radial(std::span<const double> values, double r) const;

    // dense n_r x n_r matrix applying the degree-l radial Green function of
    // the free-space inverse Laplacian; built lazily, cached
    const std::vector<double>& green_matrix(int l) const;

    // structural identity: fields loaded from files live on freshly
    // reconstructed grids, which are interchangeable when the parameters
    // match (construction is deterministic)
    bool same_as(const SphericalGrid& o) const {
        return this == &o ||
               (l_max_ == o.l_max_ && n_r_ == o.n_r_ && r_lo_ == o.r_lo_ &&
                r_max_ == o.r_max_);
    }

  private:
    SphericalGrid() = default;
    void build(int l_max, int n_r, double r_lo, double r_max);

    int l_max_ = 0, n_r_ = 0, n_theta_ = 0, n_phi_ = 0, tri_ = 0;
    double r_lo_ = 0.0, r_max_ = 0.0;
    std::vector<double> r_nodes_, r_weights_, bary_;
    std::vector<double> cos_theta_, sin_theta_, theta_weights_;
    std::vector<double> plm_, dplm_, plm_over_sin_;
    std::vector<double> diff_;
    mutable std::vector<std::vector<double>> green_cache_;
    mutable std::mutex green_mutex_;
};

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

enum class Channel { R = 0, S = 1, T = 2 };

class ScalarField {
  public:
    ScalarField() = default;
    explicit ScalarField(GridPtr grid);

    const GridPtr& grid() const { return grid_; }
    cplx& at(int j, int h) { return c_[j * nh_ + h]; }
    const cplx& at(int j, int h) const { return c_[j * nh_ + h]; }
    std::span<cplx> coef() { return c_; }
    std::span<const cplx> coef() const { return c_; }
    // contiguous view of one harmonic's radial profile? (layout is shell-major,
    // so profiles are strided; use profile() to copy)
    std::vector<cplx> profile(int h) const;
    void set_profile(int h, std::span<const cplx> p);

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(cplx s);

  private:
    GridPtr grid_;
    int nh_ = 0;
    std::vector<cplx> c_;
};

class VectorField {
  public:
    VectorField() = default;
    explicit VectorField(GridPtr grid);

    const GridPtr& grid() const { return grid_; }
    cplx& at(Channel c, int j, int h) {
        return c_[(static_cast<int>(c) * nj_ + j) * nh_ + h];
    }
    const cplx& at(Channel c, int j, int h) const {
        return c_[(static_cast<int>(c) * nj_ + j) * nh_ + h];
    }
    std::span<cplx> coef() { return c_; }
    std::span<const cplx> coef() const { return c_; }
    std::vector<cplx> profile(Channel c, int h) const;
    void set_profile(Channel c, int h, std::span<const cplx> p);

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(cplx s);

  private:
    GridPtr grid_;
    int nj_ = 0, nh_ = 0;
    std::vector<cplx> c_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(cplx s, ScalarField a);
VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(cplx s, VectorField a);

// ---- transforms -----------------------------------------------------------
//
// Scalar samples: layout [shell][theta][phi], index (j*n_theta + i)*n_phi + k.
// Vector samples: Cartesian components, component-major on top of the scalar
// layout, i.e. component c at c*n_points + (j*n_theta + i)*n_phi + k.

ScalarField analyze_scalar(const GridPtr& grid, std::span<const cplx> samples);
std::vector<cplx> synthesize_scalar(const ScalarField& f);
VectorField analyze_vector(const GridPtr& grid, std::span<const cplx> samples);
std::vector<cplx> synthesize_vector(const VectorField& f);

// ---- quadrature and inner products ----------------------------------------

cplx integrate_volume(const ScalarField& f);
cplx integrate_volume_samples(const GridPtr& grid, std::span<const cplx> s);
cplx dot(const ScalarField& a, const ScalarField& b);   // int conj(a) b d3r
cplx dot(const VectorField& a, const VectorField& b);
double norm(const ScalarField& f);
double norm(const VectorField& f);

// pointwise product through sample space; exact while the combined band
// limit stays within the grid quadrature order
ScalarField pointwise_product(const ScalarField& a, const ScalarField& b);

// max |coefficient| on the outermost shell relative to the global max;
// used by the compact-support checks
double boundary_leak(const ScalarField& f);
double boundary_leak(const VectorField& f);

using FieldVariant = std::variant<ScalarField, VectorField>;

} // namespace vsh
