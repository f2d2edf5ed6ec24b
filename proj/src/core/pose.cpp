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

#include "core/pose.hpp"

#include <algorithm>

#include "core/location.hpp"

namespace track3d {

PosePredictor PosePredictor::from_config(const BetaConfig& cfg) {
    PosePredictor p;
    p.backend = cfg.pose_backend;
    p.horizon = cfg.horizon;
    p.window = cfg.pose_window;
    return p;
}

PoseForecast predict_pose(std::span<const PoseSample> history, long target_frame,
                          const PosePredictor& predictor) {
    if (history.empty())
        throw std::invalid_argument("predict_pose: empty history");
    const long last = history.back().frame;
    if (target_frame <= last)
        throw std::invalid_argument("predict_pose: target frame not in the future");

    PoseForecast out;
    long target = target_frame;
    if (target - last > predictor.horizon) {
        target = last + predictor.horizon;
        out.clamped = true;
    }

    if (predictor.backend == PoseBackend::kLastValue) {
        out.embedding = history.back().pose;
        return out;
    }

    // linear extrapolation, independently per embedding dimension
    const std::size_t use =
        std::min(history.size(), static_cast<std::size_t>(predictor.window));
    const auto tail = history.subspan(history.size() - use, use);
    const std::size_t dim = tail.front().pose.size();
    for (const auto& s : tail)
        if (s.pose.size() != dim)
            throw std::invalid_argument("predict_pose: inconsistent pose dimensions");

    out.embedding.resize(dim);
    std::vector<Observation> obs(use);
    for (std::size_t d = 0; d < dim; ++d) {
        for (std::size_t i = 0; i < use; ++i)
            obs[i] = {static_cast<double>(tail[i].frame), tail[i].pose[d]};
        out.embedding[d] = fit_line(obs, predictor.window).predict(static_cast<double>(target));
    }
    return out;
}

PoseForecast predict_tracklet_pose(const Tracklet& t, long target_frame,
                                   const PosePredictor& predictor) {
    if (predictor.backend == PoseBackend::kExternal) {
        if (t.external_poses && !t.external_poses->empty()) {
            const auto& rows = *t.external_poses;
            const long step = target_frame - t.external_pose_frame;
            if (step < 1)
                throw std::invalid_argument("predict_tracklet_pose: target frame not in the future");
            PoseForecast out;
            std::size_t idx = static_cast<std::size_t>(step - 1);
            if (idx >= rows.size()) {
                idx = rows.size() - 1;
                out.clamped = true;
            }
            out.embedding = rows[idx];
            return out;
        }
        PosePredictor fallback = predictor;
        fallback.backend = PoseBackend::kLastValue;
        return predict_pose(t.poses, target_frame, fallback);
    }
    return predict_pose(t.poses, target_frame, predictor);
}

}  // namespace track3d
