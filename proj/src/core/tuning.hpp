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

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "core/association.hpp"
#include "core/types.hpp"

namespace track3d {

// Attribute distances between tracklet predictions and detections on
// ground-truth-labeled data, split into inliers (same identity) and
// outliers. Location distances come pre-normalized by their intervals; the
// interval itself is kept alongside so threshold calibration can price the
// per-pair cost normalizers the way the tracker will at runtime.
struct LabeledSample {
    double distance = 0.0;
    bool inlier = false;
    double interval = 1.0;
};

struct LabeledDistances {
    std::vector<LabeledSample> appearance;
    std::vector<LabeledSample> pose;
    std::vector<LabeledSample> xy;
    std::vector<LabeledSample> nearness;
};

// One frame of the association problem with identities attached: raw pair
// distances for every (gt tracklet, detection) pair plus who really owns
// what. Enough to re-run the assignment under any candidate betas.
struct LabeledFrame {
    std::vector<long> track_agents;
    std::vector<long> det_agents;  // -1 for clutter
    std::vector<PairDistances> pairs;  // row-major track x detection

    const PairDistances& pair(std::size_t t, std::size_t d) const {
        return pairs[t * det_agents.size() + d];
    }
};

struct HarvestResult {
    LabeledDistances distances;
    std::vector<LabeledFrame> frames;
};

// Replays a detection stream with oracle (ground-truth) association:
// tracklets are built per agent, predicted each frame, and measured against
// every detection of that frame.
HarvestResult harvest_distances(const std::vector<Detection>& stream,
                                const std::map<std::string, long>& detection_agent,
                                const BetaConfig& cfg);

inline constexpr double kBetaMin = 1e-6;
inline constexpr std::size_t kMinInlierSamples = 100;

// Scales from the empirical inlier distributions: Cauchy half-width for
// appearance/pose (1/median), exponential mean for the normalized location
// distances, beta_th at the 99th percentile of inlier total cost.
BetaConfig init_betas(const LabeledDistances& d, const BetaConfig& base);

// Fraction of per-detection assignment decisions (match vs no-match, and to
// whom) that disagree with ground truth.
double association_error(const BetaConfig& cfg, std::span<const LabeledFrame> frames);

// Generic downhill simplex, standard coefficients (reflect 1, expand 2,
// contract 0.5, shrink 0.5). Stops when the simplex diameter falls below
// `diameter_tol` or after `max_iters` iterations; returns the best vertex.
struct NelderMeadResult {
    std::vector<double> x;
    double fx = 0.0;
    int iterations = 0;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double initial_step, int max_iters,
                             double diameter_tol);

// Nelder-Mead over the five betas in log space (positivity is structural),
// minimizing association_error. Never returns something worse than `init`.
BetaConfig optimize_betas(const BetaConfig& init, std::span<const LabeledFrame> frames,
                          int max_iters = 500);

}  // namespace track3d
