#pragma once

// Serial reference transforms. These recompute the angular basis point by
// point with no precomputed tables and no threading; they are deliberately
// slow and independent of the production kernels in grid.cpp, and exist so
// tests can cross-check the parallel path and the benchmark has a baseline.

#include "vsh/grid.hpp"

namespace vsh::ref {

ScalarField analyze_scalar(const GridPtr& grid, std::span<const cplx> samples);
std::vector<cplx> synthesize_scalar(const ScalarField& f);
VectorField analyze_vector(const GridPtr& grid, std::span<const cplx> samples);
std::vector<cplx> synthesize_vector(const VectorField& f);

} // namespace vsh::ref
