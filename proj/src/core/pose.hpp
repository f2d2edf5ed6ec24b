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

#include <span>
#include <vector>

#include "core/types.hpp"

namespace track3d {

// Deterministic, gap-tolerant pose forecaster. last_value repeats the most
// recent embedding; linear_extrapolation fits a line per dimension over the
// trailing window; external replays predictions shipped with the detections.
struct PosePredictor {
    PoseBackend backend = PoseBackend::kLinearExtrapolation;
    int horizon = 12;  // c, max look-ahead in frames
    int window = 12;   // history entries fed to the fit

    static PosePredictor from_config(const BetaConfig& cfg);
};

struct PoseForecast {
    std::vector<double> embedding;
    bool clamped = false;  // target was past the horizon; value is the c-step prediction
};

// Forecast from an explicit history (last_value / linear_extrapolation).
// History frames may have gaps; the fit runs on true frame indices.
PoseForecast predict_pose(std::span<const PoseSample> history, long target_frame,
                          const PosePredictor& predictor);

// Tracklet-level dispatch, including the external backend (falls back to
// last_value when the stored detection carried no predicted poses).
PoseForecast predict_tracklet_pose(const Tracklet& t, long target_frame,
                                   const PosePredictor& predictor);

}  // namespace track3d
