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
#include <vector>

#include "core/metrics.hpp"
#include "core/simulator.hpp"
#include "core/tracker.hpp"
#include "core/tuning.hpp"
#include "core/types.hpp"

namespace track3d {

// Input-file problem with the offending line attached to the message.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// All floats in every emitted file use 9 significant digits.
std::string format_double(double v);

// Line-delimited JSON detection rows, sorted by frame. Each row carries
// exactly one of z / n and exactly one of appearance / uv_ref; uv_ref paths
// resolve relative to the detections file. Lines starting with '#' are
// comments.
std::vector<Detection> parse_detections(const std::string& path);
void write_detections(const std::string& path, const std::vector<Detection>& detections,
                      const std::string& header_note = "");

// Ground-truth sidecar: detection-shaped rows plus gt_id; the id is empty
// for true instances the detector missed, and gt_id is -1 for clutter.
std::vector<GroundTruthRow> parse_ground_truth(const std::string& path);
void write_ground_truth(const std::string& path, const std::vector<GroundTruthRow>& rows);

// Shot-boundary file: one frame index per line.
std::set<long> parse_shot_file(const std::string& path);
void write_shot_file(const std::string& path, const std::vector<long>& frames);

// Config file: flat JSON object, unknown keys rejected, absent keys default.
BetaConfig parse_config(const std::string& path);
void write_config(const std::string& path, const BetaConfig& cfg);

struct TrackRow {
    long frame = 0;
    std::string detection_id;
    long track_id = -1;
    double cost = 0.0;
    bool matched = false;
};

std::vector<TrackRow> parse_track_output(const std::string& path);
void write_track_output(const std::string& path, const TrackOutput& output);

MetricsReport parse_report(const std::string& path);
void write_report(const std::string& path, const MetricsReport& report);

void write_distances(const std::string& path, const LabeledDistances& distances);

// CLI pipelines. Empty strings mean "not provided" for optional inputs.
void pipeline_track(const std::string& detections_path, const std::string& config_path,
                    const std::string& shots_path, const std::string& out_path);
void pipeline_simulate(const std::string& preset, int agents, std::uint64_t seed,
                       const std::string& out_dir);
void pipeline_tune(const std::string& detections_path, const std::string& gt_path,
                   const std::string& out_config_path);
void pipeline_evaluate(const std::string& pred_path, const std::string& gt_path,
                       const std::string& report_path);
void pipeline_distances(const std::string& detections_path, const std::string& gt_path,
                        const std::string& out_path);

}  // namespace track3d
