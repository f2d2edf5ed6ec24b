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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace track3d {

// splitmix64 stream with Box-Muller gaussians and Knuth poisson draws.
// Every simulator frame gets its own stream keyed by (seed, frame), so
// output is reproducible regardless of generation order.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double uniform();            // [0, 1)
    double gaussian();           // standard normal
    double gaussian(double sigma) { return sigma > 0.0 ? sigma * gaussian() : 0.0; }
    int poisson(double lambda);

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

// Axis-aligned pinhole camera: pixel = focal * (world - position) / depth
// + principal point.
struct CameraModel {
    double focal = 1000.0;
    double cx = 640.0;
    double cy = 360.0;
    int width = 1280;
    int height = 720;
    Vec3 position;  // camera center in world units
};

struct AgentSpec {
    long id = 0;
    std::vector<std::pair<long, Vec3>> waypoints;  // (frame, world position), piecewise linear
    std::vector<double> appearance;                // emitted directly as the embedding
    std::vector<double> pose_base;
    std::vector<double> pose_drift;  // pose(t) = base + t * drift
    std::vector<std::pair<long, long>> occlusions;  // inclusive frame intervals, no emission
};

struct NoiseSpec {
    double sigma_xy = 0.0;
    double sigma_n = 0.0;
    double sigma_appearance = 0.0;
    double sigma_pose = 0.0;
    double p_miss = 0.0;
    double clutter_rate = 0.0;  // expected false detections per frame
};

struct ShotCut {
    long frame = 0;           // first frame rendered with the new camera
    CameraModel camera_after;
};

struct Scenario {
    std::string name;
    long frames = 0;  // rendered frames are 0 .. frames-1
    CameraModel camera;
    std::vector<AgentSpec> agents;
    std::vector<ShotCut> shot_cuts;
    NoiseSpec noise;
    std::uint64_t seed = 0;
    double person_height = 1.7;  // world units, sets the emitted bbox scale
    double person_width = 0.5;
};

// Ground-truth sidecar row: the true (noise-free) observation of one agent
// in one frame, bound to the emitted detection id when one exists (misses
// keep an empty id; clutter rows carry gt_id -1 and the clutter values).
struct GroundTruthRow {
    long frame = 0;
    std::string detection_id;
    long gt_id = -1;
    std::array<double, 4> bbox{0, 0, 0, 0};
    double x = 0.0;
    double y = 0.0;
    double n = 0.0;
    std::vector<double> pose;
    std::vector<double> appearance;
};

struct SimulationOutput {
    std::vector<Detection> detections;       // frame-sorted
    std::vector<GroundTruthRow> ground_truth;
    std::vector<long> shot_frames;
    std::string rng_note;  // emitted as a header comment in the detections file
};

Vec3 agent_position(const AgentSpec& agent, long frame);
bool agent_occluded(const AgentSpec& agent, long frame);

// Projects every visible agent per frame, applies the noise model, assigns
// detection ids, and records the matching ground truth.
SimulationOutput render_detections(const Scenario& s);

// Scripted scenarios. crossing: two distinct agents whose image paths
// intersect. occlusion: one agent disappears for `gap` frames mid-pass while
// a second keeps the tracker busy. appearance_twins: identical appearance
// and pose, depth separation only. shot_cut: camera re-poses mid-sequence.
// crowd: paired twins with in-pair crossings plus detector noise.
Scenario make_crossing(std::uint64_t seed);
Scenario make_occlusion(std::uint64_t seed, int gap = 23);
Scenario make_appearance_twins(std::uint64_t seed);
Scenario make_shot_cut(std::uint64_t seed);
Scenario make_crowd(std::uint64_t seed, int agents = 6);

// Dispatch by preset name for the CLI; throws on unknown names.
Scenario preset_scenario(const std::string& name, std::uint64_t seed, int agents = 6);

}  // namespace track3d
