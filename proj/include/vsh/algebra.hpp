#pragma once

// Numerical verifier for the operator-identity list. Each identity is a
// pair of operator pipelines over named atoms, applied to seeded random
// band-limited test fields and compared in the volume L2 norm:
//
//   residual = |lhs(f) - rhs(f)| / max(|lhs|, |rhs|, eps)
//
// with eps the largest intermediate norm seen while evaluating either
// side, so zero identities are measured against the scale the pipelines
// actually reached rather than against their own cancellation noise.
//
// Atoms (applied left to right in a pipeline):
//   scalar -> scalar: x y z r2 rpow-2 lap rdg rdg1 Lx Ly Lz Nx Ny Nz
//                     Mx My Mz dx dy dz
//   scalar -> vector: grad L N M rvec
//   vector -> vector: curl lap_vec r_cross
//   vector -> scalar: div dot_r Ldot Mdot cx cy cz
//
// Identities tagged "paper-suspect" are reported but excluded from the
// suite's pass/fail verdict; where the printed form fails, the registry
// carries the empirically valid variant alongside it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vsh/grid.hpp"

namespace vsh {

struct PipelineTerm {
    cplx coeff{1.0};
    std::vector<std::string> ops; // empty = identity map
};
using PipelineExpr = std::vector<PipelineTerm>;

enum class FieldKind { Scalar, Vector };

// optional fixed input r^kappa Y_lm instead of random trials (used by the
// footnote relation, which holds degree by degree)
struct FixedProfile {
    int l = 1;
    int m = 0;
    double kappa = 1.0;
    bool needs_annulus = false;
};

struct IdentitySpec {
    std::string name;
    FieldKind input = FieldKind::Scalar;
    PipelineExpr lhs, rhs;
    std::vector<std::string> tags;
    std::optional<FixedProfile> fixed;

    [[nodiscard]] bool suspect() const;
};

struct IdentityReport {
    std::string name;
    double max_rel_residual = 0.0;
    int n_trials = 0;
    bool pass = false;
    bool suspect = false;
    std::string note;
};

struct SuiteConfig {
    int l_max = 8;
    int n_r = 32;
    double r_max = 2.0;
    std::uint64_t seed = 1;
    int n_trials = 20;
    double tol = 1e-9;
};

IdentityReport verify_identity(const IdentitySpec& spec, const SuiteConfig& cfg);

struct SuiteResult {
    std::vector<IdentityReport> reports;
    int n_pass = 0, n_fail = 0, n_suspect_fail = 0;
    bool ok = false; // all non-suspect identities pass
};

SuiteResult run_suite(const std::vector<IdentitySpec>& registry,
                      const SuiteConfig& cfg);

// the shipping registry: every identity printed in the operator list,
// componentwise where indices appear, plus empirically valid variants of
// the suspect entries and the footnote relation at kappa = l, -l-1, l+2
std::vector<IdentitySpec> builtin_registry();

std::string registry_to_json(const std::vector<IdentitySpec>& reg);
std::vector<IdentitySpec> registry_from_json(const std::string& text);

} // namespace vsh
