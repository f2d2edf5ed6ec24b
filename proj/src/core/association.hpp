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

#include <string>
#include <vector>

#include "core/appearance.hpp"
#include "core/types.hpp"

namespace track3d {

// Cost value standing in for +inf; keeps the assignment solver on finite
// arithmetic.
inline constexpr double kCostSentinel = 1e12;

// Intervals from exact fits can collapse to zero; the exponential terms
// divide by them, so cost evaluation clamps here.
inline constexpr double kMinInterval = 1e-6;

// Posterior similarity terms, each proportional to the probability that the
// detection belongs to the track given one attribute distance.
// Appearance and pose: Cauchy-shaped in the squared embedding distance.
double posterior_appearance(double dist_sq, double beta);
double posterior_pose(double dist_sq, double beta);
// Image-plane and nearness: exponential in the distance normalized by the
// prediction interval, with a 1/beta scale factor.
double posterior_xy(double dist, double interval, double beta);
double posterior_nearness(double dist, double interval, double beta);

// Raw attribute distances of one track-detection pair, with the intervals
// that normalize the location terms.
struct PairDistances {
    double d_a = 0.0;      // squared appearance embedding distance
    double d_p = 0.0;      // squared pose embedding distance
    double d_xy = 0.0;     // 2D pixel distance
    double delta_xy = 1.0;
    double d_n = 0.0;      // |nearness difference|
    double delta_n = 1.0;
    bool dim_mismatch = false;
};

PairDistances measure_pair(const TrackletPrediction& pred, const Detection& det,
                           const std::vector<double>& det_appearance);

// Negative log of the fused posterior. With normalized_cost the per-pair
// log(beta*delta) terms stay in (the intervals differ across pairs, so they
// shift the argmin); without it only the distance-dependent terms remain.
// Masked-off cues contribute nothing; shot frames mask xy and nearness.
double cost_from_distances(const PairDistances& d, const BetaConfig& cfg, const CueMask& mask);

double cost(const TrackletPrediction& pred, const Detection& det, const AppearanceEncoder& enc,
            const BetaConfig& cfg, bool shot_mode);

// Effective cue mask for one frame.
CueMask frame_mask(const BetaConfig& cfg, bool shot_mode);

struct CostMatrix {
    int rows = 0;  // tracks
    int cols = 0;  // detections
    std::vector<double> values;  // row-major
    std::vector<long> track_ids;
    std::vector<std::string> detection_ids;
    bool shot_mode = false;

    double& at(int r, int c) { return values[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
};

struct Assignment {
    std::vector<std::pair<int, int>> matches;  // (track row, detection col)
    std::vector<int> unmatched_tracks;
    std::vector<int> unmatched_detections;
};

// Exact min-cost perfect matching on a square matrix (O(n^3), potentials).
// Returns col_of_row; used by the assignment step and the identity metrics.
std::vector<int> hungarian(const std::vector<double>& cost, int n);

// Thresholded assignment: the square-augmented problem gives every track and
// every detection an unmatched slot of cost beta_th, and pairs costlier than
// beta_th are gated out, so accepted matches always cost <= beta_th while the
// matching stays globally optimal.
Assignment solve_assignment(const CostMatrix& matrix, double beta_th);

}  // namespace track3d
