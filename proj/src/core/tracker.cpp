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

#include "core/tracker.hpp"

#include <algorithm>
#include <map>

#include "core/lifecycle.hpp"
#include "core/location.hpp"

namespace track3d {

namespace {

TrackletPrediction predict_tracklet(const Tracklet& t, long frame, const BetaConfig& cfg,
                                    const AppearanceEncoder& enc, const PosePredictor& pp) {
    TrackletPrediction pred;
    pred.appearance = predict_appearance(t, enc);

    const LocationForecast loc = predict_location(t, frame, cfg);
    pred.x = loc.x;
    pred.y = loc.y;
    pred.n = loc.n;
    const double ft = static_cast<double>(frame);
    pred.delta_x = prediction_interval(loc.fit_x, ft, cfg.confidence, cfg.delta_floor_xy);
    pred.delta_y = prediction_interval(loc.fit_y, ft, cfg.confidence, cfg.delta_floor_xy);
    pred.delta_n = prediction_interval(loc.fit_n, ft, cfg.confidence, cfg.delta_floor_n);

    const PoseForecast pose = predict_tracklet_pose(t, frame, pp);
    pred.pose = pose.embedding;
    pred.pose_clamped = pose.clamped;
    return pred;
}

TrackSummary summarize(const Tracklet& t) {
    return {t.id, t.first_frame, t.last_matched_frame, t.observations};
}

}  // namespace

TrackerSession::TrackerSession(BetaConfig cfg, std::set<long> shot_boundaries)
    : cfg_(std::move(cfg)),
      encoder_(AppearanceEncoder::from_config(cfg_)),
      pose_predictor_(PosePredictor::from_config(cfg_)),
      shots_(std::move(shot_boundaries)) {
    cfg_.validate();
}

FrameResult TrackerSession::step(long frame, const std::vector<Detection>& detections) {
    if (frame <= cursor_)
        throw std::invalid_argument("tracker: frame index must increase");
    std::set<std::string> seen_ids;
    for (const auto& d : detections) {
        if (d.frame != frame)
            throw std::invalid_argument("tracker: detection frame differs from step frame");
        if (!seen_ids.insert(d.id).second)
            throw std::invalid_argument("tracker: duplicate detection id '" + d.id + "'");
        d.validate();
    }

    FrameResult result;
    result.frame = frame;
    result.shot_mode = shots_.count(frame) > 0;
    const CueMask mask = frame_mask(cfg_, result.shot_mode);

    // per-detection appearance embeddings, computed once
    std::vector<std::vector<double>> det_app;
    det_app.reserve(detections.size());
    for (const auto& d : detections)
        det_app.push_back(detection_appearance(d, encoder_));

    CostMatrix matrix;
    matrix.rows = static_cast<int>(tracks_.size());
    matrix.cols = static_cast<int>(detections.size());
    matrix.shot_mode = result.shot_mode;
    matrix.values.assign(static_cast<std::size_t>(matrix.rows) * matrix.cols, kCostSentinel);
    for (int i = 0; i < matrix.rows; ++i) {
        matrix.track_ids.push_back(tracks_[i].id);
        const TrackletPrediction pred =
            predict_tracklet(tracks_[i], frame, cfg_, encoder_, pose_predictor_);
        for (int j = 0; j < matrix.cols; ++j) {
            matrix.at(i, j) =
                cost_from_distances(measure_pair(pred, detections[j], det_app[j]), cfg_, mask);
        }
    }
    for (const auto& d : detections)
        matrix.detection_ids.push_back(d.id);

    const Assignment assignment = solve_assignment(matrix, cfg_.beta_th);

    result.records.resize(detections.size());
    for (const auto& [i, j] : assignment.matches) {
        touch_tracklet(tracks_[i], detections[j], cfg_, encoder_);
        if (result.shot_mode) {
            // location continuity is broken across the cut; keep only the
            // observation just matched as the new regression seed
            tracks_[i].locations.erase(tracks_[i].locations.begin(),
                                       tracks_[i].locations.end() - 1);
        }
        result.records[j] = {detections[j].id, tracks_[i].id, matrix.at(i, j), true};
    }

    // age the unmatched by the elapsed frames (equals +1 per step when the
    // driver visits every frame), then reap
    std::vector<Tracklet> survivors;
    survivors.reserve(tracks_.size());
    for (auto& t : tracks_) {
        if (t.last_matched_frame == frame) {
            survivors.push_back(std::move(t));
            continue;
        }
        t.age = static_cast<int>(frame - t.last_matched_frame);
        if (t.age >= cfg_.t_max) {
            t.alive = false;
            retired_.push_back(summarize(t));
        } else {
            survivors.push_back(std::move(t));
        }
    }
    tracks_ = std::move(survivors);

    for (int j : assignment.unmatched_detections) {
        Tracklet t = spawn_tracklet(detections[j], next_id_++);
        result.records[j] = {detections[j].id, t.id, 0.0, false};
        tracks_.push_back(std::move(t));
    }

    cursor_ = frame;
    return result;
}

TrackOutput run_tracker(const std::vector<Detection>& stream, const BetaConfig& cfg,
                        const std::set<long>& shot_boundaries) {
    for (std::size_t i = 1; i < stream.size(); ++i)
        if (stream[i].frame < stream[i - 1].frame)
            throw std::invalid_argument("run_tracker: stream not sorted by frame");

    TrackOutput out;
    TrackerSession session(cfg, shot_boundaries);
    if (stream.empty())
        return out;

    const long first = stream.front().frame;
    const long last = stream.back().frame;
    std::size_t cursor = 0;
    for (long frame = first; frame <= last; ++frame) {
        std::vector<Detection> dets;
        while (cursor < stream.size() && stream[cursor].frame == frame)
            dets.push_back(stream[cursor++]);
        out.frames.push_back(session.step(frame, dets));
    }

    out.summaries = session.retired();
    for (const auto& t : session.tracklets())
        out.summaries.push_back({t.id, t.first_frame, t.last_matched_frame, t.observations});
    std::sort(out.summaries.begin(), out.summaries.end(),
              [](const TrackSummary& a, const TrackSummary& b) { return a.track_id < b.track_id; });
    return out;
}

}  // namespace track3d
