// vshtool: spectral decomposition and multipole analysis of vector fields
// on a ball. Subcommands: decompose, moments, verify, demo-anapole.
// Exit codes: 0 success, 1 I/O or configuration, 2 gauge violation,
// 3 numerical fit failure.

#include <CLI11.hpp>

#include "vsh/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"spectral vector-field scalarization and multipole toolkit"};
    app.require_subcommand(1);

    vsh::cli::DecomposeOptions dec;
    auto* cdec = app.add_subcommand("decompose",
                                    "Helmholtz or Neumann-Debye split of a "
                                    "vector field");
    cdec->add_option("--input", dec.input,
                     "vsf-1 file or builtin:<source>?key=value&...")
        ->required();
    cdec->add_option("--mode", dec.mode, "helmholtz | debye")->required();
    cdec->add_option("--output", dec.output_dir, "output directory")
        ->required();
    cdec->add_option("--tol", dec.tol, "gauge / route tolerance");

    vsh::cli::MomentsOptions mom;
    auto* cmom = app.add_subcommand("moments",
                                    "multipole form factors and moments of a "
                                    "current density");
    cmom->add_option("--input", mom.input, "vsf-1 file or builtin source")
        ->required();
    cmom->add_option("--lmax", mom.l_max, "highest moment degree");
    cmom->add_option("--kmin", mom.k_min, "smallest wavenumber");
    cmom->add_option("--kmax", mom.k_max, "largest wavenumber");
    cmom->add_option("--nk", mom.n_k, "number of wavenumbers");
    cmom->add_option("--nmax", mom.n_max, "highest 2n-radius order");
    cmom->add_option("--output", mom.output, "CSV output path")->required();

    vsh::cli::VerifyOptions ver;
    auto* cver = app.add_subcommand("verify",
                                    "operator-identity and decomposition "
                                    "verification suites");
    cver->add_option("--suite", ver.suite,
                     "algebra | decompose | multipole | all");
    cver->add_option("--lmax", ver.l_max, "band limit for random trials");
    cver->add_option("--seed", ver.seed, "random seed");
    cver->add_option("--tol", ver.tol, "residual tolerance");
    cver->add_option("--registry", ver.registry,
                     "identity registry JSON (default: builtin)");
    cver->add_option("--output", ver.output, "write the report as CSV");
    cver->add_option("--dump-registry", ver.dump_registry,
                     "write the builtin registry as JSON and continue");
    cver->add_flag("--quiet", ver.quiet,
                   "suppress the stdout table (report file still written)");

    vsh::cli::AnapoleOptions ana;
    auto* cana = app.add_subcommand("demo-anapole",
                                    "toroidal-solenoid anapole demonstration");
    cana->add_option("--sigma", ana.sigma, "tube smoothing width");
    cana->add_option("--R", ana.torus_R, "torus major radius");
    cana->add_option("--a", ana.torus_a, "torus minor radius");
    cana->add_option("--output", ana.output_dir, "output directory")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : vsh::cli::kExitIo;
    }

    if (cdec->parsed()) return vsh::cli::run_decompose(dec);
    if (cmom->parsed()) return vsh::cli::run_moments(mom);
    if (cver->parsed()) return vsh::cli::run_verify(ver);
    return vsh::cli::run_demo_anapole(ana);
}
