#pragma once

// Seeded generators for smooth, compactly supported band-limited test
// fields. Radial profiles carry the r^l leading behavior of smooth
// Cartesian fields, so every operator chain maps them to other smooth
// fields and spectral radial differentiation stays superconvergent:
//
//   f_lm(r) = r^l (a0 + a1 u + a2 u^2) e^{-u},   u = (r/scale)^2
//
// Vector fields are built from three random scalar potentials as
// grad f1 + L f2 + N f3, which keeps them smooth at the origin and spans
// all three spectral channels.

#include <cstdint>

#include "vsh/grid.hpp"

namespace vsh {

struct RandomFieldOptions {
    int l_limit = 4;        // maximal angular degree to populate
    double radial_scale = 0.0; // 0 -> r_max / 5.5 (decay < 1e-12 at the rim)
    int radial_terms = 3;   // polynomial terms in u
};

ScalarField random_scalar_field(const GridPtr& grid, std::uint64_t seed,
                                const RandomFieldOptions& opt);
VectorField random_vector_field(const GridPtr& grid, std::uint64_t seed,
                                const RandomFieldOptions& opt);

} // namespace vsh
