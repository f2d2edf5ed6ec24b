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

#include "core/lifecycle.hpp"

#include <algorithm>

namespace track3d {

namespace {

template <typename T>
void push_bounded(std::vector<T>& ring, T value, std::size_t capacity) {
    ring.push_back(std::move(value));
    if (ring.size() > capacity)
        ring.erase(ring.begin());
}

std::size_t pose_capacity(const BetaConfig& cfg) {
    return static_cast<std::size_t>(std::max(2 * cfg.horizon, cfg.window));
}

}  // namespace

Tracklet spawn_tracklet(const Detection& d, long next_id) {
    d.validate();
    Tracklet t;
    t.id = next_id;
    if (d.appearance_map)
        t.appearance_map = *d.appearance_map;
    else
        t.appearance_embedding = *d.appearance_embedding;
    t.locations.push_back({d.frame, d.location});
    t.poses.push_back({d.frame, d.pose_embedding});
    if (d.predicted_poses) {
        t.external_poses = *d.predicted_poses;
        t.external_pose_frame = d.frame;
    }
    t.first_frame = d.frame;
    t.last_matched_frame = d.frame;
    t.observations = 1;
    t.age = 0;
    t.alive = true;
    return t;
}

void touch_tracklet(Tracklet& t, const Detection& d, const BetaConfig& cfg,
                    const AppearanceEncoder& enc) {
    if (d.frame <= t.last_frame())
        throw std::invalid_argument("touch_tracklet: detection frame not after tracklet history");

    push_bounded(t.locations, LocationSample{d.frame, d.location},
                 static_cast<std::size_t>(cfg.window));
    push_bounded(t.poses, PoseSample{d.frame, d.pose_embedding}, pose_capacity(cfg));

    if (t.appearance_map && d.appearance_map) {
        t.appearance_map = aggregate(*t.appearance_map, *d.appearance_map, cfg.alpha_0);
    } else if (t.appearance_embedding) {
        t.appearance_embedding =
            blend_embedding(*t.appearance_embedding, detection_appearance(d, enc), cfg.alpha_0);
    }
    // map-state tracklet fed an embedding-only detection: no map observation
    // to fold in, the aggregate stays as it is (alpha = 0 case).

    if (d.predicted_poses) {
        t.external_poses = *d.predicted_poses;
        t.external_pose_frame = d.frame;
    }
    t.last_matched_frame = d.frame;
    t.observations += 1;
    t.age = 0;
}

ReapResult age_and_reap(std::vector<Tracklet> tracks, int t_max) {
    ReapResult out;
    for (auto& t : tracks) {
        t.age += 1;
        if (t.age >= t_max) {
            t.alive = false;
            out.killed.push_back(std::move(t));
        } else {
            out.alive.push_back(std::move(t));
        }
    }
    return out;
}

}  // namespace track3d
