#pragma once

// Command implementations behind the vshtool front end. They live in the
// library so tests can drive them in-process; vshtool only parses flags
// and maps exceptions to the exit-code contract:
//   0 success, 1 I/O or configuration, 2 gauge violation, 3 fit/numerics.
//
// Every command writes a RunManifest (JSON) alongside its outputs with the
// command name, the full option snapshot, tool version, input/output paths
// and wall time. Report files themselves contain no timestamps, so a rerun
// with the same seed is byte-identical.

#include <cstdint>
#include <optional>
#include <string>

namespace vsh::cli {

inline constexpr const char* kToolVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitGauge = 2;
constexpr int kExitFit = 3;

struct DecomposeOptions {
    std::string input;       // vsf-1 path or builtin:<name>?k=v&...
    std::string mode;        // "helmholtz" | "debye"
    std::string output_dir;
    double tol = 1e-9;
};

struct MomentsOptions {
    std::string input;
    int l_max = 3;           // highest moment degree
    double k_min = 0.05;
    double k_max = 1.0;
    int n_k = 16;
    int n_max = 2;           // highest 2n-radius order
    std::string output;      // CSV path
};

struct VerifyOptions {
    std::string suite = "all"; // algebra | decompose | multipole | all
    int l_max = 8;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    std::string registry;      // optional registry JSON for the algebra suite
    std::string output;        // optional report CSV path
    std::string dump_registry; // optional: write the builtin registry here
    bool quiet = false;        // suppress the stdout table (report still written)
};

struct AnapoleOptions {
    double sigma = 0.3;
    double torus_R = 1.0;
    double torus_a = 0.4;
    std::string output_dir;
};

int run_decompose(const DecomposeOptions& opt);
int run_moments(const MomentsOptions& opt);
int run_verify(const VerifyOptions& opt);
int run_demo_anapole(const AnapoleOptions& opt);

} // namespace vsh::cli
