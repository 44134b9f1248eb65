#pragma once

// vsf-1 field files: a single JSON document
//   { "format": "vsf-1",
//     "grid": { "l_max", "n_r", "r_max", "n_theta", "n_phi" },
//     "kind": "scalar" | "vector",
//     "data": base64 of little-endian IEEE-754 doubles, interleaved [re, im],
//             in coefficient memory order (channel-major, then shell, then
//             flat harmonic index h = l(l+1)+m) }
// Grid nodes are recomputed from the header, never stored.

#include <string>

#include "vsh/grid.hpp"

namespace vsh {

void save_field(const std::string& path, const ScalarField& f);
void save_field(const std::string& path, const VectorField& f);
FieldVariant load_field(const std::string& path);

namespace detail {
std::string base64_encode(const unsigned char* data, size_t n);
std::vector<unsigned char> base64_decode(const std::string& s);
} // namespace detail

} // namespace vsh
