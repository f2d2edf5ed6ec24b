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

#include <vector>

#include "core/appearance.hpp"
#include "core/types.hpp"

namespace track3d {

// New tracklet from an unmatched detection: age 0, single-entry histories,
// appearance state in whichever form the detection carries.
Tracklet spawn_tracklet(const Detection& d, long next_id);

// Fold a matched detection into a tracklet: append histories (rings bounded
// by the config), reset age, update the appearance aggregate. Rejects
// detections at or before the tracklet's last observed frame.
void touch_tracklet(Tracklet& t, const Detection& d, const BetaConfig& cfg,
                    const AppearanceEncoder& enc);

struct ReapResult {
    std::vector<Tracklet> alive;
    std::vector<Tracklet> killed;
};

// Ages every (unmatched) tracklet by one frame, then retires those whose
// age reached t_max.
ReapResult age_and_reap(std::vector<Tracklet> tracks, int t_max);

}  // namespace track3d
