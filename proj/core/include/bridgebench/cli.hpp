#pragma once

#include <optional>
#include <string>

#include "bridgebench/study.hpp"

namespace bridgebench::cli {

// Exit-code contract shared by all commands.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;      // bad flags, config, or manifest
inline constexpr int exit_numerical = 3;  // solver failure

// One parsed invocation.  Precedence: flag overrides > config file > built-in
// defaults.  format must be valid for the command (vtk only for `field`).
struct RunManifest {
    enum class Command { run, converge, field, reference };

    Command command = Command::converge;
    std::string config_path;  // optional JSON config
    std::string output_path;  // empty = stdout
    std::string format;       // empty = command default (json; vtk for field)

    std::optional<double> h_cm;           // run / field
    std::optional<int> mask_count;
    std::optional<std::string> element_order;
    std::optional<int> levels;            // converge: first N of the sequence
    bool extended = false;                // converge: 7-level sequence
    bool profile = false;                 // also write <out>.profile.csv
    std::optional<double> grading_ratio;  // run: graded mesh reproduction
    std::optional<std::string> focus_corner;
    std::optional<double> spacing_cm;     // reference
    std::optional<int> threads;
};

// Study configuration implied by a manifest (defaults, then config file,
// then flag overrides).  Throws config_error / std::invalid_argument on bad
// input; callers map those to exit_usage.
StudyConfig load_study_config(const RunManifest& manifest);

// Single-level report at --h-cm (plus optional profile / graded variant).
int cmd_run(const RunManifest& manifest);

// Full refinement study over the configured sequence.
int cmd_converge(const RunManifest& manifest);

// Nodal temperature + flux field export as legacy VTK.
int cmd_field(const RunManifest& manifest);

// Analytic reference table (default spacing 0.05 m -> 28 points).
int cmd_reference(const RunManifest& manifest);

}  // namespace bridgebench::cli
