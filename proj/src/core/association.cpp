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

#include "core/association.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace track3d {

namespace {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double clamp_interval(double delta) { return std::max(delta, kMinInterval); }

}  // namespace

double posterior_appearance(double dist_sq, double beta) {
    if (dist_sq < 0.0)
        throw std::invalid_argument("posterior_appearance: negative distance");
    return 1.0 / (1.0 + beta * dist_sq);
}

double posterior_pose(double dist_sq, double beta) {
    if (dist_sq < 0.0)
        throw std::invalid_argument("posterior_pose: negative distance");
    return 1.0 / (1.0 + beta * dist_sq);
}

double posterior_xy(double dist, double interval, double beta) {
    if (dist < 0.0)
        throw std::invalid_argument("posterior_xy: negative distance");
    return std::exp(-dist / (beta * clamp_interval(interval))) / beta;
}

double posterior_nearness(double dist, double interval, double beta) {
    if (dist < 0.0)
        throw std::invalid_argument("posterior_nearness: negative distance");
    return std::exp(-dist / (beta * clamp_interval(interval))) / beta;
}

PairDistances measure_pair(const TrackletPrediction& pred, const Detection& det,
                           const std::vector<double>& det_appearance) {
    PairDistances d;
    if (pred.appearance.size() != det_appearance.size() ||
        pred.pose.size() != det.pose_embedding.size()) {
        d.dim_mismatch = true;
        return d;
    }
    d.d_a = squared_distance(pred.appearance, det_appearance);
    d.d_p = squared_distance(pred.pose, det.pose_embedding);
    d.d_xy = std::hypot(pred.x - det.location.x, pred.y - det.location.y);
    d.delta_xy = pred.delta_xy();
    d.d_n = std::abs(pred.n - det.location.n);
    d.delta_n = pred.delta_n;
    return d;
}

double cost_from_distances(const PairDistances& d, const BetaConfig& cfg, const CueMask& mask) {
    if (d.dim_mismatch)
        return kCostSentinel;
    double c = 0.0;
    if (mask.appearance)
        c += std::log1p(cfg.beta_a * d.d_a);
    if (mask.pose)
        c += std::log1p(cfg.beta_p * d.d_p);
    if (mask.xy) {
        const double delta = clamp_interval(d.delta_xy);
        c += d.d_xy / (cfg.beta_xy * delta);
        if (cfg.normalized_cost)
            c += std::log(cfg.beta_xy * delta);
    }
    if (mask.nearness) {
        const double delta = clamp_interval(d.delta_n);
        c += d.d_n / (cfg.beta_n * delta);
        if (cfg.normalized_cost)
            c += std::log(cfg.beta_n * delta);
    }
    if (!std::isfinite(c) || c > kCostSentinel)
        return kCostSentinel;
    return c;
}

CueMask frame_mask(const BetaConfig& cfg, bool shot_mode) {
    CueMask mask = cfg.cues;
    if (shot_mode) {
        // the camera moved: image-plane and depth continuity are void
        mask.xy = false;
        mask.nearness = false;
    }
    return mask;
}

double cost(const TrackletPrediction& pred, const Detection& det, const AppearanceEncoder& enc,
            const BetaConfig& cfg, bool shot_mode) {
    return cost_from_distances(measure_pair(pred, det, detection_appearance(det, enc)), cfg,
                               frame_mask(cfg, shot_mode));
}

std::vector<int> hungarian(const std::vector<double>& cost, int n) {
    if (n == 0)
        return {};
    if (cost.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("hungarian: matrix is not n*n");

    constexpr double kInf = std::numeric_limits<double>::infinity();
    // potentials over rows (u) and columns (v); p[j] = row matched to column
    // j, index 0 is the virtual column. Shortest augmenting paths.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = kInf;
            int j1 = -1;
            for (int j = 1; j <= n; ++j) {
                if (used[j])
                    continue;
                const double cur =
                    cost[static_cast<std::size_t>(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if (j1 < 0)
                throw internal_error("hungarian: no augmenting column");
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }

    std::vector<int> col_of_row(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0)
            col_of_row[p[j] - 1] = j - 1;
    return col_of_row;
}

Assignment solve_assignment(const CostMatrix& matrix, double beta_th) {
    if (!std::isfinite(beta_th))
        throw std::invalid_argument("solve_assignment: beta_th must be finite");

    const int n = matrix.rows;
    const int m = matrix.cols;
    Assignment out;
    if (n == 0 || m == 0) {
        for (int i = 0; i < n; ++i)
            out.unmatched_tracks.push_back(i);
        for (int j = 0; j < m; ++j)
            out.unmatched_detections.push_back(j);
        return out;
    }

    // (n+m)^2 layout: real block | track unmatched slots (diag beta_th)
    //                 det unmatched slots (diag beta_th) | free zeros
    const int s = n + m;
    std::vector<double> aug(static_cast<std::size_t>(s) * s, kCostSentinel);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            double c = matrix.at(i, j);
            if (!std::isfinite(c) || c > beta_th)
                c = kCostSentinel;  // gated: accepted matches stay <= beta_th
            aug[static_cast<std::size_t>(i) * s + j] = c;
        }
        aug[static_cast<std::size_t>(i) * s + (m + i)] = beta_th;
    }
    for (int j = 0; j < m; ++j)
        aug[static_cast<std::size_t>(n + j) * s + j] = beta_th;
    for (int i = n; i < s; ++i)
        for (int j = m; j < s; ++j)
            aug[static_cast<std::size_t>(i) * s + j] = 0.0;

    const std::vector<int> col_of_row = hungarian(aug, s);
    for (int i = 0; i < n; ++i) {
        const int j = col_of_row[i];
        if (j < m)
            out.matches.emplace_back(i, j);
        else
            out.unmatched_tracks.push_back(i);
    }
    std::vector<char> det_matched(m, 0);
    for (const auto& [i, j] : out.matches)
        det_matched[j] = 1;
    for (int j = 0; j < m; ++j)
        if (!det_matched[j])
            out.unmatched_detections.push_back(j);
    return out;
}

}  // namespace track3d
