#include "vsh/random_fields.hpp"

#include <cmath>
#include <random>

#include "vsh/operators.hpp"

namespace vsh {

ScalarField random_scalar_field(const GridPtr& grid, std::uint64_t seed,
                                const RandomFieldOptions& opt) {
    const double scale =
        opt.radial_scale > 0.0 ? opt.radial_scale : grid->r_max() / 5.5;
    const int l_limit = std::min(opt.l_limit, grid->l_max());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    ScalarField f(grid);
    for (int l = 0; l <= l_limit; ++l) {
        for (int m = -l; m <= l; ++m) {
            const int h = l * (l + 1) + m;
            std::vector<cplx> amp(opt.radial_terms);
            for (auto& a : amp) a = {nd(rng), nd(rng)};
            // profile normalization keeps degrees comparable
            double pnorm = 0.0;
            std::vector<cplx> prof(grid->n_r());
            for (int j = 0; j < grid->n_r(); ++j) {
                const double r = grid->r_nodes()[j];
                const double u = (r / scale) * (r / scale);
                cplx poly{0.0};
                double up = 1.0;
                for (const auto& a : amp) {
                    poly += a * up;
                    up *= u;
                }
                prof[j] = std::pow(r, l) * std::exp(-u) * poly;
                pnorm += grid->r_weights()[j] * r * r * std::norm(prof[j]);
            }
            pnorm = std::sqrt(pnorm);
            if (pnorm > 0.0)
                for (int j = 0; j < grid->n_r(); ++j)
                    f.at(j, h) = prof[j] / pnorm;
        }
    }
    double n = norm(f);
    if (n > 0.0) f *= cplx{1.0 / n};
    return f;
}

VectorField random_vector_field(const GridPtr& grid, std::uint64_t seed,
                                const RandomFieldOptions& opt) {
    auto f1 = random_scalar_field(grid, seed * 3 + 1, opt);
    auto f2 = random_scalar_field(grid, seed * 3 + 2, opt);
    auto f3 = random_scalar_field(grid, seed * 3 + 3, opt);
    VectorField v = gradient(f1);
    v += apply_L(f2);
    // N raises the radial dynamic range; keep the three parts comparable
    auto nv = apply_N(f3);
    double nn = norm(nv);
    if (nn > 0.0) nv *= cplx{1.0 / nn};
    v += nv;
    double n = norm(v);
    if (n > 0.0) v *= cplx{1.0 / n};
    return v;
}

} // namespace vsh
