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

#include <set>
#include <string>
#include <vector>

#include "core/appearance.hpp"
#include "core/association.hpp"
#include "core/pose.hpp"
#include "core/types.hpp"

namespace track3d {

struct MatchRecord {
    std::string detection_id;
    long track_id = -1;
    double cost = 0.0;
    bool matched = false;  // false when the detection spawned a new track
};

struct FrameResult {
    long frame = 0;
    bool shot_mode = false;
    std::vector<MatchRecord> records;  // one per input detection, input order
};

struct TrackSummary {
    long track_id = -1;
    long first_frame = 0;
    long last_frame = 0;
    long observations = 0;
};

struct TrackOutput {
    std::vector<FrameResult> frames;
    std::vector<TrackSummary> summaries;
};

// Online tracking state for one video. Strictly sequential across frames;
// snapshots of the tracklets may be read concurrently between steps.
class TrackerSession {
public:
    explicit TrackerSession(BetaConfig cfg, std::set<long> shot_boundaries = {});

    // One frame of the association loop: predict every live tracklet to
    // `frame`, build the cost matrix (shot frames drop the location terms),
    // solve the thresholded assignment, update matched tracks, age and reap
    // the rest, spawn tracks for unmatched detections.
    FrameResult step(long frame, const std::vector<Detection>& detections);

    // Frames whose association must ignore location continuity.
    void add_shot_boundary(long frame) { shots_.insert(frame); }

    const std::vector<Tracklet>& tracklets() const { return tracks_; }
    const std::vector<TrackSummary>& retired() const { return retired_; }
    long next_id() const { return next_id_; }
    long frame_cursor() const { return cursor_; }
    const BetaConfig& config() const { return cfg_; }

private:
    BetaConfig cfg_;
    AppearanceEncoder encoder_;
    PosePredictor pose_predictor_;
    std::set<long> shots_;
    std::vector<Tracklet> tracks_;
    std::vector<TrackSummary> retired_;
    long next_id_ = 0;
    long cursor_ = -1;
};

// Batch driver: walks every integer frame from the first to the last of the
// stream (frames with no detections age the tracks) and collects per-frame
// records plus final track summaries.
TrackOutput run_tracker(const std::vector<Detection>& stream, const BetaConfig& cfg,
                        const std::set<long>& shot_boundaries = {});

}  // namespace track3d
