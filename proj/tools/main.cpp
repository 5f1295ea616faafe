#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bridgebench/cli.hpp"

namespace {

using bridgebench::cli::RunManifest;

void add_common_flags(CLI::App* cmd, RunManifest& manifest) {
    cmd->add_option("--config", manifest.config_path,
                    "JSON configuration file (flat keys: h_sequence_m, "
                    "element_order, mask_count, corner_rule, flux_tolerance, "
                    "temp_tolerance, threads)");
    cmd->add_option("-o,--out", manifest.output_path,
                    "output file (default: stdout)");
    cmd->add_option("--threads", manifest.threads,
                    "concurrent refinement levels (default: "
                    "BRIDGEBENCH_THREADS or 1)");
}

void add_study_flags(CLI::App* cmd, RunManifest& manifest) {
    cmd->add_option("--mask", manifest.mask_count,
                    "marginal nodes to drop at the singular corner "
                    "(default 1)");
    cmd->add_option("--order", manifest.element_order,
                    "element order: linear | serendipity");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Steady-state conduction benchmark on the ISO 10211 Case 1 domain: "
        "refinement studies of the top-edge heat flow, its singular-corner "
        "masking, and the analytic reference solution"};
    app.require_subcommand(1);

    RunManifest manifest;

    CLI::App* run = app.add_subcommand(
        "run", "solve a single element size and report one row");
    add_common_flags(run, manifest);
    add_study_flags(run, manifest);
    run->add_option("--h-cm", manifest.h_cm, "element size in cm")->required();
    run->add_option("--format", manifest.format, "json | csv (default json)");
    run->add_option("--grading-ratio", manifest.grading_ratio,
                    "geometric cell-size ratio toward the focus corner "
                    "(1 = uniform)");
    run->add_option("--focus-corner", manifest.focus_corner,
                    "bottom_left | bottom_right | top_right | top_left "
                    "(default top_right; needs --grading-ratio)");
    run->add_flag("--profile", manifest.profile,
                  "also write <out>.profile.csv with the per-node top-edge "
                  "flux (needs --out)");

    CLI::App* converge = app.add_subcommand(
        "converge", "refinement study over the element-size sequence");
    add_common_flags(converge, manifest);
    add_study_flags(converge, manifest);
    converge->add_option("--format", manifest.format,
                         "json | csv (default json)");
    converge->add_option("--levels", manifest.levels,
                         "use only the first N sequence entries");
    converge->add_flag("--extended", manifest.extended,
                       "seven-level sequence down to 0.03125 cm");
    converge->add_flag("--profile", manifest.profile,
                       "also write <out>.profile.csv (needs --out)");

    CLI::App* field = app.add_subcommand(
        "field", "export nodal temperature and flux as legacy VTK");
    add_common_flags(field, manifest);
    add_study_flags(field, manifest);
    field->add_option("--h-cm", manifest.h_cm, "element size in cm")
        ->required();
    field->add_option("--format", manifest.format, "vtk (default)");
    field->add_option("--grading-ratio", manifest.grading_ratio,
                      "geometric cell-size ratio toward the focus corner");
    field->add_option("--focus-corner", manifest.focus_corner,
                      "focus corner for --grading-ratio");

    CLI::App* reference = app.add_subcommand(
        "reference", "analytic reference temperatures on the 0.05 m grid");
    reference->add_option("-o,--out", manifest.output_path,
                          "output file (default: stdout)");
    reference->add_option("--format", manifest.format,
                          "json | csv (default json)");
    reference->add_option("--spacing-cm", manifest.spacing_cm,
                          "grid spacing in cm (default 5)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help and friends
        }
        app.exit(e);
        return bridgebench::cli::exit_usage;
    }

    if (run->parsed()) {
        manifest.command = RunManifest::Command::run;
        return bridgebench::cli::cmd_run(manifest);
    }
    if (converge->parsed()) {
        manifest.command = RunManifest::Command::converge;
        return bridgebench::cli::cmd_converge(manifest);
    }
    if (field->parsed()) {
        manifest.command = RunManifest::Command::field;
        return bridgebench::cli::cmd_field(manifest);
    }
    manifest.command = RunManifest::Command::reference;
    return bridgebench::cli::cmd_reference(manifest);
}
