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

#include "track3d/track3d.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "core/io.hpp"
#include "core/tracker.hpp"
#include "core/types.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
t3d_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return T3D_OK;
    } catch (const track3d::parse_error& e) {
        set_error(e.what());
        return T3D_ERR_IO;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return T3D_ERR_INVALID_ARGUMENT;
    } catch (const track3d::internal_error& e) {
        set_error(e.what());
        return T3D_ERR_INTERNAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return T3D_ERR_INTERNAL;
    }
}

t3d_status require(bool ok, const char* msg) {
    if (ok)
        return T3D_OK;
    set_error(msg);
    return T3D_ERR_INVALID_ARGUMENT;
}

std::string opt_path(const char* p) { return p ? std::string(p) : std::string(); }

}  // namespace

struct t3d_config {
    track3d::BetaConfig cfg;
};

struct t3d_tracker {
    explicit t3d_tracker(track3d::BetaConfig cfg) : session(std::move(cfg)) {}
    track3d::TrackerSession session;
};

extern "C" {

const char* t3d_version(void) { return "1.0.0"; }

const char* t3d_status_name(t3d_status status) {
    switch (status) {
        case T3D_OK: return "T3D_OK";
        case T3D_ERR_INVALID_ARGUMENT: return "T3D_ERR_INVALID_ARGUMENT";
        case T3D_ERR_IO: return "T3D_ERR_IO";
        case T3D_ERR_STATE: return "T3D_ERR_STATE";
        case T3D_ERR_INTERNAL: return "T3D_ERR_INTERNAL";
    }
    return "T3D_UNKNOWN";
}

const char* t3d_last_error(void) { return g_last_error.c_str(); }

t3d_status t3d_config_create(t3d_config** out_config) {
    if (t3d_status s = require(out_config != nullptr, "out_config is null"); s != T3D_OK)
        return s;
    return guarded([&] { *out_config = new t3d_config(); });
}

t3d_status t3d_config_load(const char* path, t3d_config** out_config) {
    if (t3d_status s = require(path && out_config, "path/out_config is null"); s != T3D_OK)
        return s;
    return guarded([&] {
        auto cfg = track3d::parse_config(path);
        *out_config = new t3d_config{std::move(cfg)};
    });
}

t3d_status t3d_config_save(const t3d_config* config, const char* path) {
    if (t3d_status s = require(config && path, "config/path is null"); s != T3D_OK)
        return s;
    return guarded([&] { track3d::write_config(path, config->cfg); });
}

void t3d_config_destroy(t3d_config* config) { delete config; }

namespace {

// numeric view over the named config fields; booleans go through 0/1
bool config_get_value(const track3d::BetaConfig& c, const std::string& key, double& out) {
    if (key == "beta_a") out = c.beta_a;
    else if (key == "beta_p") out = c.beta_p;
    else if (key == "beta_xy") out = c.beta_xy;
    else if (key == "beta_n") out = c.beta_n;
    else if (key == "beta_th") out = c.beta_th;
    else if (key == "alpha_0") out = c.alpha_0;
    else if (key == "w") out = c.window;
    else if (key == "confidence") out = c.confidence;
    else if (key == "t_max") out = c.t_max;
    else if (key == "c") out = c.horizon;
    else if (key == "pose_window") out = c.pose_window;
    else if (key == "delta_floor_xy") out = c.delta_floor_xy;
    else if (key == "delta_floor_n") out = c.delta_floor_n;
    else if (key == "normalized_cost") out = c.normalized_cost ? 1.0 : 0.0;
    else if (key == "use_appearance") out = c.cues.appearance ? 1.0 : 0.0;
    else if (key == "use_pose") out = c.cues.pose ? 1.0 : 0.0;
    else if (key == "use_xy") out = c.cues.xy ? 1.0 : 0.0;
    else if (key == "use_nearness") out = c.cues.nearness ? 1.0 : 0.0;
    else if (key == "encoder_grid") out = c.encoder_grid;
    else if (key == "map_size") out = c.map_size;
    else return false;
    return true;
}

bool config_set_value(track3d::BetaConfig& c, const std::string& key, double v) {
    if (key == "beta_a") c.beta_a = v;
    else if (key == "beta_p") c.beta_p = v;
    else if (key == "beta_xy") c.beta_xy = v;
    else if (key == "beta_n") c.beta_n = v;
    else if (key == "beta_th") c.beta_th = v;
    else if (key == "alpha_0") c.alpha_0 = v;
    else if (key == "w") c.window = static_cast<int>(v);
    else if (key == "confidence") c.confidence = v;
    else if (key == "t_max") c.t_max = static_cast<int>(v);
    else if (key == "c") c.horizon = static_cast<int>(v);
    else if (key == "pose_window") c.pose_window = static_cast<int>(v);
    else if (key == "delta_floor_xy") c.delta_floor_xy = v;
    else if (key == "delta_floor_n") c.delta_floor_n = v;
    else if (key == "normalized_cost") c.normalized_cost = v != 0.0;
    else if (key == "use_appearance") c.cues.appearance = v != 0.0;
    else if (key == "use_pose") c.cues.pose = v != 0.0;
    else if (key == "use_xy") c.cues.xy = v != 0.0;
    else if (key == "use_nearness") c.cues.nearness = v != 0.0;
    else if (key == "encoder_grid") c.encoder_grid = static_cast<int>(v);
    else if (key == "map_size") c.map_size = static_cast<int>(v);
    else return false;
    return true;
}

}  // namespace

t3d_status t3d_config_set(t3d_config* config, const char* key, double value) {
    if (t3d_status s = require(config && key, "config/key is null"); s != T3D_OK)
        return s;
    return guarded([&] {
        track3d::BetaConfig next = config->cfg;
        if (!config_set_value(next, key, value))
            throw std::invalid_argument(std::string("unknown config key '") + key + "'");
        next.validate();
        config->cfg = next;
    });
}

t3d_status t3d_config_get(const t3d_config* config, const char* key, double* out_value) {
    if (t3d_status s = require(config && key && out_value, "config/key/out_value is null");
        s != T3D_OK)
        return s;
    return guarded([&] {
        if (!config_get_value(config->cfg, key, *out_value))
            throw std::invalid_argument(std::string("unknown config key '") + key + "'");
    });
}

t3d_status t3d_tracker_create(const t3d_config* config, t3d_tracker** out_tracker) {
    if (t3d_status s = require(out_tracker != nullptr, "out_tracker is null"); s != T3D_OK)
        return s;
    return guarded([&] {
        track3d::BetaConfig cfg = config ? config->cfg : track3d::BetaConfig{};
        *out_tracker = new t3d_tracker(std::move(cfg));
    });
}

t3d_status t3d_tracker_add_shot_boundary(t3d_tracker* tracker, int64_t frame) {
    if (t3d_status s = require(tracker != nullptr, "tracker is null"); s != T3D_OK)
        return s;
    return guarded([&] { tracker->session.add_shot_boundary(frame); });
}

void t3d_tracker_destroy(t3d_tracker* tracker) { delete tracker; }

t3d_status t3d_tracker_step(t3d_tracker* tracker, int64_t frame, const t3d_detection* detections,
                            size_t detection_count, t3d_match* out_matches) {
    if (t3d_status s = require(tracker != nullptr, "tracker is null"); s != T3D_OK)
        return s;
    if (t3d_status s = require(detection_count == 0 || detections != nullptr,
                               "detections is null with nonzero count");
        s != T3D_OK)
        return s;
    if (t3d_status s = require(detection_count == 0 || out_matches != nullptr,
                               "out_matches is null with nonzero count");
        s != T3D_OK)
        return s;
    if (frame <= tracker->session.frame_cursor()) {
        set_error("frame index must increase across steps");
        return T3D_ERR_STATE;
    }

    return guarded([&] {
        std::vector<track3d::Detection> dets(detection_count);
        for (size_t i = 0; i < detection_count; ++i) {
            const t3d_detection& in = detections[i];
            track3d::Detection& d = dets[i];
            d.frame = in.frame;
            d.id = in.id ? in.id
                         : ("d" + std::to_string(frame) + "_" + std::to_string(i));
            std::copy(in.bbox, in.bbox + 4, d.bbox.begin());
            if (in.use_nearness)
                d.location = track3d::Location3D::from_nearness(in.x, in.y, in.nearness);
            else
                d.location = track3d::Location3D::from_depth(in.x, in.y, in.depth_z);
            if (!in.appearance || in.appearance_len == 0)
                throw std::invalid_argument("detection appearance embedding is required");
            d.appearance_embedding.emplace(in.appearance, in.appearance + in.appearance_len);
            if (!in.pose || in.pose_len == 0)
                throw std::invalid_argument("detection pose embedding is required");
            d.pose_embedding.assign(in.pose, in.pose + in.pose_len);
            if (in.predicted_poses && in.pred_rows > 0) {
                std::vector<std::vector<double>> rows(in.pred_rows);
                for (size_t r = 0; r < in.pred_rows; ++r)
                    rows[r].assign(in.predicted_poses + r * in.pose_len,
                                   in.predicted_poses + (r + 1) * in.pose_len);
                d.predicted_poses = std::move(rows);
            }
        }

        const track3d::FrameResult result = tracker->session.step(frame, dets);
        for (size_t i = 0; i < detection_count; ++i) {
            out_matches[i].track_id = result.records[i].track_id;
            out_matches[i].cost = result.records[i].cost;
            out_matches[i].matched = result.records[i].matched ? 1 : 0;
        }
    });
}

t3d_status t3d_tracker_active_tracks(const t3d_tracker* tracker, size_t* out_count) {
    if (t3d_status s = require(tracker && out_count, "tracker/out_count is null"); s != T3D_OK)
        return s;
    *out_count = tracker->session.tracklets().size();
    return T3D_OK;
}

t3d_status t3d_run_track(const char* detections_path, const char* config_path,
                         const char* shots_path, const char* out_path) {
    if (t3d_status s = require(detections_path && out_path, "detections/out path is null");
        s != T3D_OK)
        return s;
    return guarded([&] {
        track3d::pipeline_track(detections_path, opt_path(config_path), opt_path(shots_path),
                                out_path);
    });
}

t3d_status t3d_run_simulate(const char* preset, int agents, uint64_t seed, const char* out_dir) {
    if (t3d_status s = require(preset && out_dir, "preset/out_dir is null"); s != T3D_OK)
        return s;
    return guarded([&] {
        track3d::pipeline_simulate(preset, agents > 0 ? agents : 6, seed, out_dir);
    });
}

t3d_status t3d_run_tune(const char* detections_path, const char* gt_path,
                        const char* out_config_path) {
    if (t3d_status s = require(detections_path && gt_path && out_config_path, "path is null");
        s != T3D_OK)
        return s;
    return guarded([&] { track3d::pipeline_tune(detections_path, gt_path, out_config_path); });
}

t3d_status t3d_run_evaluate(const char* pred_path, const char* gt_path, const char* report_path) {
    if (t3d_status s = require(pred_path && gt_path && report_path, "path is null"); s != T3D_OK)
        return s;
    return guarded([&] { track3d::pipeline_evaluate(pred_path, gt_path, report_path); });
}

t3d_status t3d_run_distances(const char* detections_path, const char* gt_path,
                             const char* out_path) {
    if (t3d_status s = require(detections_path && gt_path && out_path, "path is null");
        s != T3D_OK)
        return s;
    return guarded([&] { track3d::pipeline_distances(detections_path, gt_path, out_path); });
}

}  // extern "C"
