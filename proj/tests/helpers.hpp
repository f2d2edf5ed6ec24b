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

#pragma once

#include <map>
#include <set>
#include <string>

#include "core/metrics.hpp"
#include "core/simulator.hpp"
#include "core/tracker.hpp"

namespace track3d::testutil {

struct EvalData {
    FrameBoxes gt;
    FrameBoxes pred;
    TrackOutput output;
};

// Render a scenario, run the tracker, and join the labeled detections back
// onto the ground-truth boxes so the metrics see box streams for both sides.
inline EvalData track_and_collect(const Scenario& scenario, const BetaConfig& cfg,
                                  bool use_shots) {
    const SimulationOutput sim = render_detections(scenario);
    std::set<long> shots;
    if (use_shots)
        shots.insert(sim.shot_frames.begin(), sim.shot_frames.end());

    EvalData data;
    data.output = run_tracker(sim.detections, cfg, shots);

    std::map<std::string, const GroundTruthRow*> by_detection;
    for (const auto& row : sim.ground_truth) {
        if (row.gt_id >= 0)
            data.gt[row.frame].push_back(
                {row.gt_id, {row.bbox[0], row.bbox[1], row.bbox[2], row.bbox[3]}});
        if (!row.detection_id.empty())
            by_detection[row.detection_id] = &row;
    }
    for (const auto& frame : data.output.frames) {
        for (const auto& rec : frame.records) {
            const GroundTruthRow& row = *by_detection.at(rec.detection_id);
            data.pred[frame.frame].push_back(
                {rec.track_id, {row.bbox[0], row.bbox[1], row.bbox[2], row.bbox[3]}});
        }
    }
    return data;
}

// detection id -> true agent id (clutter included as -1)
inline std::map<std::string, long> agent_of_detection(const SimulationOutput& sim) {
    std::map<std::string, long> map;
    for (const auto& row : sim.ground_truth)
        if (!row.detection_id.empty())
            map[row.detection_id] = row.gt_id;
    return map;
}

}  // namespace track3d::testutil
