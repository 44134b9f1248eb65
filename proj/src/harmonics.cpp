#include "vsh/harmonics.hpp"

#include <cmath>
#include <stdexcept>

namespace vsh {

HarmonicIndex HarmonicIndex::from_flat(int h) {
    int l = static_cast<int>(std::sqrt(static_cast<double>(h)));
    // guard against rounding at perfect squares
    while (l * l > h) --l;
    while ((l + 1) * (l + 1) <= h) ++l;
    return {l, h - l * (l + 1)};
}

double double_factorial_odd(int l) {
    double v = 1.0;
    for (int k = 3; k <= 2 * l + 1; k += 2) v *= k;
    return v;
}

double eval_legendre(int l, double x) {
    if (l < 0) throw std::domain_error("eval_legendre: l must be >= 0");
    if (std::abs(x) > 1.0 + 1e-14)
        throw std::domain_error("eval_legendre: |x| > 1");
    if (x > 1.0) x = 1.0;
    if (x < -1.0) x = -1.0;
    if (l == 0) return 1.0;
    double pm2 = 1.0, pm1 = x;
    for (int n = 2; n <= l; ++n) {
        double p = ((2 * n - 1) * x * pm1 - (n - 1) * pm2) / n;
        pm2 = pm1;
        pm1 = p;
    }
    return pm1;
}

void normalized_plm_row(int l_max, double x, double s, std::span<double> out) {
    const double inv_sqrt4pi = 0.28209479177387814; // 1/sqrt(4 pi)
    if (static_cast<int>(out.size()) < plm_tri_size(l_max))
        throw std::invalid_argument("normalized_plm_row: output too small");

    out[0] = inv_sqrt4pi;
    if (l_max == 0) return;

    // diagonal: Pbar_mm = -sqrt((2m+1)/(2m)) s Pbar_{m-1,m-1}  (CS phase)
    for (int m = 1; m <= l_max; ++m) {
        out[plm_tri_index(m, m)] =
            -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s *
            out[plm_tri_index(m - 1, m - 1)];
    }
    // first off-diagonal: Pbar_{m+1,m} = sqrt(2m+3) x Pbar_mm
    for (int m = 0; m < l_max; ++m) {
        out[plm_tri_index(m + 1, m)] =
            std::sqrt(2.0 * m + 3.0) * x * out[plm_tri_index(m, m)];
    }
    // upward in l
    for (int m = 0; m <= l_max; ++m) {
        for (int l = m + 2; l <= l_max; ++l) {
            double a = std::sqrt((4.0 * l * l - 1.0) /
                                 (static_cast<double>(l) * l - static_cast<double>(m) * m));
            double b = std::sqrt(
                ((static_cast<double>(l - 1) * (l - 1) - static_cast<double>(m) * m)) /
                (4.0 * static_cast<double>(l - 1) * (l - 1) - 1.0));
            out[plm_tri_index(l, m)] =
                a * (x * out[plm_tri_index(l - 1, m)] -
                     b * out[plm_tri_index(l - 2, m)]);
        }
    }
}

namespace {

// Pbar_lm for a single (l, m), m >= 0.
double normalized_plm_single(int l, int m, double x, double s) {
    const double inv_sqrt4pi = 0.28209479177387814;
    double pmm = inv_sqrt4pi;
    for (int k = 1; k <= m; ++k)
        pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
    if (l == m) return pmm;
    double pm1 = std::sqrt(2.0 * m + 3.0) * x * pmm;
    if (l == m + 1) return pm1;
    double pm2 = pmm;
    double p = 0.0;
    for (int n = m + 2; n <= l; ++n) {
        double a = std::sqrt((4.0 * n * n - 1.0) /
                             (static_cast<double>(n) * n - static_cast<double>(m) * m));
        double b = std::sqrt(
            ((static_cast<double>(n - 1) * (n - 1) - static_cast<double>(m) * m)) /
            (4.0 * static_cast<double>(n - 1) * (n - 1) - 1.0));
        p = a * (x * pm1 - b * pm2);
        pm2 = pm1;
        pm1 = p;
    }
    return pm1;
}

void check_angles(double theta) {
    if (theta < -1e-12 || theta > M_PI + 1e-12)
        throw std::domain_error("theta outside [0, pi]");
}

} // namespace

cplx eval_ylm(HarmonicIndex idx, double theta, double phi) {
    if (!idx.valid()) throw std::domain_error("eval_ylm: invalid (l, m)");
    check_angles(theta);
    const int ma = std::abs(idx.m);
    const double x = std::cos(theta), s = std::sin(theta);
    const double p = normalized_plm_single(idx.l, ma, x, s);
    cplx e = std::polar(1.0, ma * phi);
    if (idx.m >= 0) return p * e;
    // Y_{l,-m} = (-1)^m conj(Y_lm)
    double sign = (ma % 2 == 0) ? 1.0 : -1.0;
    return sign * p * std::conj(e);
}

std::array<cplx, 3> eval_l_ylm(HarmonicIndex idx, double theta, double phi) {
    if (!idx.valid()) throw std::domain_error("eval_l_ylm: invalid (l, m)");
    check_angles(theta);
    const int l = idx.l, m = idx.m;
    // Ladder relations for the Hermitian op = i L:
    //   op_+ Y_lm = c_+ Y_{l,m+1},  c_+ = sqrt((l-m)(l+m+1))
    //   op_- Y_lm = c_- Y_{l,m-1},  c_- = sqrt((l+m)(l-m+1))
    //   op_z Y_lm = m Y_lm
    // so L = -i op componentwise.
    const double cp = std::sqrt(static_cast<double>(l - m) * (l + m + 1));
    const double cm = std::sqrt(static_cast<double>(l + m) * (l - m + 1));
    cplx y = eval_ylm(idx, theta, phi);
    cplx yp = (m + 1 <= l) ? eval_ylm({l, m + 1}, theta, phi) : cplx{0.0};
    cplx ym = (m - 1 >= -l) ? eval_ylm({l, m - 1}, theta, phi) : cplx{0.0};
    const cplx I{0.0, 1.0};
    std::array<cplx, 3> out;
    out[0] = -0.5 * I * (cp * yp + cm * ym);
    out[1] = -0.5 * (cp * yp - cm * ym);
    out[2] = -I * static_cast<double>(m) * y;
    return out;
}

std::array<cplx, 3> eval_vector_harmonic(VectorHarmonicIndex idx, double theta,
                                         double phi) {
    if (!idx.valid())
        throw std::domain_error("eval_vector_harmonic: invalid (l, lp, m)");
    const int l = idx.l;
    const std::array<double, 3> rhat{std::sin(theta) * std::cos(phi),
                                     std::sin(theta) * std::sin(phi),
                                     std::cos(theta)};
    auto ly = eval_l_ylm({l, idx.m}, theta, phi);
    if (idx.lp == l) {
        double n = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        return {ly[0] * n, ly[1] * n, ly[2] * n};
    }
    // surface gradient grad_S Y = rhat x (L Y)
    std::array<cplx, 3> gs{rhat[1] * ly[2] - rhat[2] * ly[1],
                           rhat[2] * ly[0] - rhat[0] * ly[2],
                           rhat[0] * ly[1] - rhat[1] * ly[0]};
    cplx y = eval_ylm({l, idx.m}, theta, phi);
    std::array<cplx, 3> out;
    if (idx.lp == l - 1) {
        double n = 1.0 / std::sqrt(static_cast<double>(l) * (2 * l + 1));
        for (int i = 0; i < 3; ++i) out[i] = n * (double(l) * y * rhat[i] + gs[i]);
    } else {
        double n = 1.0 / std::sqrt(static_cast<double>(l + 1) * (2 * l + 1));
        for (int i = 0; i < 3; ++i)
            out[i] = n * (double(l + 1) * y * rhat[i] - gs[i]);
    }
    return out;
}

double spherical_bessel_j(int l, double x) {
    if (l < 0) throw std::domain_error("spherical_bessel_j: l must be >= 0");
    if (x < 0.0) throw std::domain_error("spherical_bessel_j: x must be >= 0");
    if (x == 0.0) return l == 0 ? 1.0 : 0.0;

    if (x < 0.5 || x < 0.15 * l) {
        // power series around the leading x^l/(2l+1)!! term
        double term = 1.0;
        for (int k = 1; k <= l; ++k) term *= x / (2.0 * k + 1.0);
        double sum = 1.0, t = 1.0;
        const double x2 = 0.5 * x * x;
        for (int k = 1; k < 60; ++k) {
            t *= -x2 / (k * (2.0 * l + 2.0 * k + 1.0));
            sum += t;
            if (std::abs(t) < 1e-18 * std::abs(sum)) break;
        }
        return term * sum;
    }

    const double j0 = std::sin(x) / x;
    if (l == 0) return j0;
    const double j1 = j0 / x - std::cos(x) / x;
    if (l == 1) return j1;

    if (x > l + 2) {
        // upward recurrence, stable for x above the turning point
        double jm1 = j0, j = j1;
        for (int n = 1; n < l; ++n) {
            double jn = (2.0 * n + 1.0) / x * j - jm1;
            jm1 = j;
            j = jn;
        }
        return j;
    }

    // Miller downward recurrence, normalized against j_0
    const int start = l + 20 + static_cast<int>(x);
    double jp1 = 0.0, jn = 1e-30;
    double target = (l == start) ? jn : 0.0;
    for (int n = start; n >= 1; --n) {
        double jm1 = (2.0 * n + 1.0) / x * jn - jp1; // j_{n-1}
        jp1 = jn;
        jn = jm1;
        if (n - 1 == l) target = jn;
        if (std::abs(jn) > 1e250) {
            jn *= 1e-250;
            jp1 *= 1e-250;
            target *= 1e-250;
        }
    }
    // jn now holds the unnormalized j_0
    return target * (j0 / jn);
}

} // namespace vsh
