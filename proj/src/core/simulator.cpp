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

#include "core/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "core/location.hpp"

namespace track3d {

std::uint64_t SplitMix64::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SplitMix64::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0)
        u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

int SplitMix64::poisson(double lambda) {
    if (lambda <= 0.0)
        return 0;
    const double limit = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= uniform();
    } while (p > limit);
    return k - 1;
}

Vec3 agent_position(const AgentSpec& agent, long frame) {
    if (agent.waypoints.empty())
        throw std::invalid_argument("simulator: agent has no waypoints");
    const auto& wp = agent.waypoints;
    if (frame <= wp.front().first)
        return wp.front().second;
    if (frame >= wp.back().first)
        return wp.back().second;
    for (std::size_t i = 1; i < wp.size(); ++i) {
        if (frame <= wp[i].first) {
            const auto& [f0, p0] = wp[i - 1];
            const auto& [f1, p1] = wp[i];
            const double t = static_cast<double>(frame - f0) / static_cast<double>(f1 - f0);
            return {p0.x + t * (p1.x - p0.x), p0.y + t * (p1.y - p0.y),
                    p0.z + t * (p1.z - p0.z)};
        }
    }
    return wp.back().second;
}

bool agent_occluded(const AgentSpec& agent, long frame) {
    for (const auto& [a, b] : agent.occlusions)
        if (frame >= a && frame <= b)
            return true;
    return false;
}

namespace {

std::vector<double> agent_pose(const AgentSpec& agent, long frame) {
    std::vector<double> p(agent.pose_base.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = agent.pose_base[i] + static_cast<double>(frame) * agent.pose_drift[i];
    return p;
}

const CameraModel& camera_at(const Scenario& s, long frame) {
    const CameraModel* cam = &s.camera;
    for (const auto& cut : s.shot_cuts)
        if (frame >= cut.frame)
            cam = &cut.camera_after;
    return *cam;
}

std::array<double, 4> person_bbox(const Scenario& s, const CameraModel& cam, double px, double py,
                                  double depth) {
    const double h = cam.focal * s.person_height / depth;
    const double w = cam.focal * s.person_width / depth;
    return {px - w / 2.0, py - h / 2.0, w, h};
}

std::string detection_name(long counter) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "d%06ld", counter);
    return buf;
}

}  // namespace

SimulationOutput render_detections(const Scenario& s) {
    if (s.frames <= 0)
        throw std::invalid_argument("simulator: scenario has no frames");

    SimulationOutput out;
    for (const auto& cut : s.shot_cuts)
        out.shot_frames.push_back(cut.frame);
    std::sort(out.shot_frames.begin(), out.shot_frames.end());

    {
        char note[160];
        std::snprintf(note, sizeof(note),
                      "rng=splitmix64 seed=%llu schedule=per-frame(seed^((frame+1)*0x9E3779B97F4A7C15)) "
                      "draws=agent-order:miss,x,y,n,appearance,pose then clutter",
                      static_cast<unsigned long long>(s.seed));
        out.rng_note = note;
    }

    long det_counter = 0;
    for (long frame = 0; frame < s.frames; ++frame) {
        SplitMix64 rng(s.seed ^ ((static_cast<std::uint64_t>(frame) + 1) * 0x9E3779B97F4A7C15ULL));
        const CameraModel& cam = camera_at(s, frame);

        for (const auto& agent : s.agents) {
            if (agent_occluded(agent, frame))
                continue;
            const Vec3 pos = agent_position(agent, frame);
            const double depth = pos.z - cam.position.z;
            if (!(depth > 0.0))
                throw std::invalid_argument("simulator: agent behind the camera while visible");

            const double px = cam.focal * (pos.x - cam.position.x) / depth + cam.cx;
            const double py = cam.focal * (pos.y - cam.position.y) / depth + cam.cy;
            const double n_true = to_nearness(depth);
            const std::vector<double> pose_true = agent_pose(agent, frame);

            GroundTruthRow gt;
            gt.frame = frame;
            gt.gt_id = agent.id;
            gt.bbox = person_bbox(s, cam, px, py, depth);
            gt.x = px;
            gt.y = py;
            gt.n = n_true;
            gt.pose = pose_true;
            gt.appearance = agent.appearance;

            const bool missed = rng.uniform() < s.noise.p_miss;
            if (missed) {
                out.ground_truth.push_back(std::move(gt));
                continue;
            }

            Detection d;
            d.frame = frame;
            d.id = detection_name(det_counter++);
            const double nx = px + rng.gaussian(s.noise.sigma_xy);
            const double ny = py + rng.gaussian(s.noise.sigma_xy);
            const double nn = n_true + rng.gaussian(s.noise.sigma_n);
            d.location = Location3D::from_nearness(nx, ny, nn);
            d.bbox = person_bbox(s, cam, nx, ny, std::exp(-nn));
            d.appearance_embedding = agent.appearance;
            for (auto& v : *d.appearance_embedding)
                v += rng.gaussian(s.noise.sigma_appearance);
            d.pose_embedding = pose_true;
            for (auto& v : d.pose_embedding)
                v += rng.gaussian(s.noise.sigma_pose);

            gt.detection_id = d.id;
            out.ground_truth.push_back(std::move(gt));
            out.detections.push_back(std::move(d));
        }

        const int clutter = rng.poisson(s.noise.clutter_rate);
        for (int k = 0; k < clutter; ++k) {
            Detection d;
            d.frame = frame;
            d.id = detection_name(det_counter++);
            const double px = rng.uniform() * cam.width;
            const double py = rng.uniform() * cam.height;
            const double depth = 2.0 + 8.0 * rng.uniform();
            d.location = Location3D::from_depth(px, py, depth);
            d.bbox = person_bbox(s, cam, px, py, depth);
            std::vector<double> app(s.agents.empty() ? 8 : s.agents.front().appearance.size());
            for (auto& v : app)
                v = rng.uniform();
            d.appearance_embedding = std::move(app);
            std::vector<double> pose(s.agents.empty() ? 6 : s.agents.front().pose_base.size());
            for (auto& v : pose)
                v = 2.0 * rng.uniform() - 1.0;
            d.pose_embedding = std::move(pose);

            GroundTruthRow gt;
            gt.frame = frame;
            gt.detection_id = d.id;
            gt.gt_id = -1;
            gt.bbox = d.bbox;
            gt.x = d.location.x;
            gt.y = d.location.y;
            gt.n = d.location.n;
            gt.pose = d.pose_embedding;
            gt.appearance = *d.appearance_embedding;
            out.ground_truth.push_back(std::move(gt));
            out.detections.push_back(std::move(d));
        }
    }
    return out;
}

namespace {

std::vector<double> signature(int dim, int hot, double base) {
    std::vector<double> v(dim, base);
    v[hot % dim] = 1.0;
    return v;
}

AgentSpec basic_agent(long id, Vec3 from, Vec3 to, long frames, int app_hot, int pose_hot) {
    AgentSpec a;
    a.id = id;
    a.waypoints = {{0, from}, {frames - 1, to}};
    a.appearance = signature(8, app_hot, 0.1);
    a.pose_base = signature(6, pose_hot, -0.2);
    a.pose_drift.assign(6, 0.0);
    a.pose_drift[pose_hot % 6] = 0.004;
    return a;
}

}  // namespace

Scenario make_crossing(std::uint64_t seed) {
    Scenario s;
    s.name = "crossing";
    s.frames = 61;
    s.seed = seed;
    s.agents.push_back(basic_agent(0, {-2.0, 0.0, 5.0}, {2.0, 0.0, 5.0}, s.frames, 0, 0));
    s.agents.push_back(basic_agent(1, {2.0, 0.3, 6.5}, {-2.0, 0.3, 6.5}, s.frames, 3, 2));
    return s;
}

Scenario make_occlusion(std::uint64_t seed, int gap) {
    if (gap < 1)
        throw std::invalid_argument("make_occlusion: gap must be >= 1");
    Scenario s;
    s.name = "occlusion";
    s.frames = 80;
    s.seed = seed;
    AgentSpec walker = basic_agent(0, {-2.0, 0.0, 5.0}, {2.0, 0.0, 5.0}, s.frames, 0, 0);
    walker.occlusions = {{30, 30 + gap - 1}};
    if (30 + gap >= s.frames)
        s.frames = 30 + gap + 20;  // keep frames after reappearance
    if (walker.waypoints.back().first != s.frames - 1)
        walker.waypoints.back().first = s.frames - 1;
    s.agents.push_back(std::move(walker));
    s.agents.push_back(basic_agent(1, {0.33, 0.1, 3.0}, {0.55, 0.1, 3.0}, s.frames, 5, 3));
    return s;
}

Scenario make_appearance_twins(std::uint64_t seed) {
    Scenario s;
    s.name = "appearance_twins";
    s.frames = 61;
    s.seed = seed;
    AgentSpec a = basic_agent(0, {-1.5, 0.0, 5.0}, {1.5, 0.0, 5.0}, s.frames, 2, 1);
    AgentSpec b = basic_agent(1, {1.5, 0.0, 6.5}, {-1.5, 0.0, 6.5}, s.frames, 2, 1);
    b.appearance = a.appearance;  // indistinguishable by appearance and pose
    b.pose_base = a.pose_base;
    b.pose_drift = a.pose_drift;
    s.agents.push_back(std::move(a));
    s.agents.push_back(std::move(b));
    return s;
}

Scenario make_shot_cut(std::uint64_t seed) {
    Scenario s;
    s.name = "shot_cut";
    s.frames = 80;
    s.seed = seed;
    s.agents.push_back(basic_agent(0, {-1.5, 0.0, 5.0}, {1.5, 0.0, 5.0}, s.frames, 1, 0));
    s.agents.push_back(basic_agent(1, {1.5, 0.2, 7.0}, {-1.5, 0.2, 7.0}, s.frames, 4, 3));
    ShotCut cut;
    cut.frame = 40;
    cut.camera_after = s.camera;
    cut.camera_after.position = {2.0, 0.5, 0.0};  // big image-plane jump, same depths
    s.shot_cuts.push_back(cut);
    return s;
}

Scenario make_crowd(std::uint64_t seed, int agents) {
    if (agents < 2)
        throw std::invalid_argument("make_crowd: needs at least 2 agents");
    Scenario s;
    s.name = "crowd";
    s.frames = 100;
    s.seed = seed;
    s.noise.sigma_xy = 1.0;
    s.noise.sigma_n = 0.01;
    s.noise.sigma_appearance = 0.02;
    s.noise.sigma_pose = 0.05;
    s.noise.p_miss = 0.03;

    // Every pair crosses once mid-sequence in the image plane. Each pair is
    // ambiguous in every cue except one, cycling through nearness, pose and
    // appearance, so dropping any single cue leaves some crossing
    // unresolvable. Straight constant-velocity paths keep the scenario fair
    // for a locally linear motion model.
    const int pairs = agents / 2;
    for (int p = 0; p < pairs; ++p) {
        const int role = p % 3;  // 0: nearness, 1: pose, 2: appearance
        const double z0 = 4.5 + 1.2 * p;
        const double y = -0.8 + 0.8 * p;

        AgentSpec a;
        a.id = 2 * p;
        a.appearance = signature(8, p, 0.1);
        a.pose_base = signature(6, p, -0.2);
        a.pose_drift.assign(6, 0.0);
        a.pose_drift[p % 6] = 0.003;

        AgentSpec b = a;
        b.id = 2 * p + 1;
        const double z1 = role == 0 ? z0 + 0.5 : z0;  // depth-separated twins
        if (role == 0) {
            // drift through each other at under a pixel per frame: the image
            // plane stays ambiguous for several frames and only the depth
            // separation can carry identity through the pass. The rear twin
            // rides a compensated world height so both project to the same
            // pixel row.
            const double yb = y * z1 / z0;
            a.waypoints = {{0, {-0.10, y, z0}}, {s.frames - 1, {0.13, y, z0}}};
            b.waypoints = {{0, {0.12 * z1 / z0, yb, z1}},
                           {s.frames - 1, {-0.11 * z1 / z0, yb, z1}}};
        } else {
            a.waypoints = {{0, {-2.0, y, z0}}, {s.frames - 1, {2.0, y, z0}}};
            b.waypoints = {{0, {2.0, y, z1}}, {s.frames - 1, {-2.0, y, z1}}};
        }
        if (role == 1) {  // pose-separated twins
            b.pose_base[(p + 1) % 6] += 0.45;
            b.pose_base[(p + 2) % 6] -= 0.45;
        }
        if (role == 2)  // appearance-separated twins
            b.appearance = signature(8, p + 4, 0.1);

        s.agents.push_back(std::move(a));
        s.agents.push_back(std::move(b));
    }
    if (agents % 2 == 1) {
        AgentSpec solo;
        solo.id = agents - 1;
        solo.waypoints = {{0, {0.0, 1.0, 9.0}}, {s.frames - 1, {0.5, 1.0, 6.0}}};
        solo.appearance = signature(8, 7, 0.1);
        solo.pose_base = signature(6, 5, -0.2);
        solo.pose_drift.assign(6, 0.0);
        s.agents.push_back(std::move(solo));
    }
    return s;
}

Scenario preset_scenario(const std::string& name, std::uint64_t seed, int agents) {
    if (name == "crossing")
        return make_crossing(seed);
    if (name == "occlusion")
        return make_occlusion(seed);
    if (name == "appearance_twins")
        return make_appearance_twins(seed);
    if (name == "shot_cut")
        return make_shot_cut(seed);
    if (name == "crowd")
        return make_crowd(seed, agents);
    throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace track3d
