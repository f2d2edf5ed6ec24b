/*
Copyright 2026 track3d authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Command-line front end. Thin by design: every subcommand maps onto one
// t3d_run_* call of the shared library.

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "track3d/track3d.h"

namespace {

// exit codes: 0 ok, 1 input problem, 2 internal invariant violation
int exit_code(t3d_status status) {
    switch (status) {
        case T3D_OK: return 0;
        case T3D_ERR_INVALID_ARGUMENT:
        case T3D_ERR_IO:
        case T3D_ERR_STATE: return 1;
        case T3D_ERR_INTERNAL: return 2;
    }
    return 2;
}

int finish(t3d_status status) {
    if (status != T3D_OK)
        std::fprintf(stderr, "error (%s): %s\n", t3d_status_name(status), t3d_last_error());
    return exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"track3d: online multi-person tracking on 3D-lifted detections"};
    app.require_subcommand(1);
    app.set_version_flag("--version", t3d_version());

    std::string detections, config, shots, out, pred, gt, report, preset = "crossing";
    std::uint64_t seed = 0;
    int agents = 6;

    auto* track = app.add_subcommand("track", "Associate a detection stream into identity tracks");
    track->add_option("--detections", detections, "detection stream (JSON lines)")->required();
    track->add_option("--config", config, "engine config file");
    track->add_option("--shots", shots, "shot-boundary file, one frame index per line");
    track->add_option("--out", out, "output track file")->required();

    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic ground-truth scenario");
    simulate->add_option("--preset", preset,
                         "crossing | occlusion | appearance_twins | shot_cut | crowd");
    simulate->add_option("--seed", seed, "scenario seed");
    simulate->add_option("--agents", agents, "agent count (crowd preset)");
    simulate->add_option("--out", out, "output directory")->required();

    auto* tune = app.add_subcommand("tune", "Fit the association parameters on labeled data");
    tune->add_option("--detections", detections, "detection stream")->required();
    tune->add_option("--gt", gt, "ground-truth sidecar")->required();
    tune->add_option("--out", out, "output config file")->required();

    auto* evaluate = app.add_subcommand("evaluate", "Score a track file against ground truth");
    evaluate->add_option("--pred", pred, "track output file")->required();
    evaluate->add_option("--gt", gt, "ground-truth sidecar")->required();
    evaluate->add_option("--report", report, "metrics report file")->required();

    auto* distances = app.add_subcommand(
        "distances", "Harvest labeled inlier/outlier attribute distances");
    distances->add_option("--detections", detections, "detection stream")->required();
    distances->add_option("--gt", gt, "ground-truth sidecar")->required();
    distances->add_option("--out", out, "output distance samples file")->required();

    CLI11_PARSE(app, argc, argv);

    if (track->parsed())
        return finish(t3d_run_track(detections.c_str(), config.empty() ? nullptr : config.c_str(),
                                    shots.empty() ? nullptr : shots.c_str(), out.c_str()));
    if (simulate->parsed())
        return finish(t3d_run_simulate(preset.c_str(), agents, seed, out.c_str()));
    if (tune->parsed())
        return finish(t3d_run_tune(detections.c_str(), gt.c_str(), out.c_str()));
    if (evaluate->parsed())
        return finish(t3d_run_evaluate(pred.c_str(), gt.c_str(), report.c_str()));
    if (distances->parsed())
        return finish(t3d_run_distances(detections.c_str(), gt.c_str(), out.c_str()));
    return 1;
}
