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

#include "core/tuning.hpp"

#include <algorithm>
#include <cmath>

#include "core/lifecycle.hpp"
#include "core/location.hpp"
#include "core/pose.hpp"
#include "core/tracker.hpp"

namespace track3d {

HarvestResult harvest_distances(const std::vector<Detection>& stream,
                                const std::map<std::string, long>& detection_agent,
                                const BetaConfig& cfg) {
    cfg.validate();
    const AppearanceEncoder enc = AppearanceEncoder::from_config(cfg);
    const PosePredictor pp = PosePredictor::from_config(cfg);

    HarvestResult out;
    std::map<long, Tracklet> tracklets;  // agent id -> oracle tracklet

    std::size_t i = 0;
    while (i < stream.size()) {
        const long frame = stream[i].frame;
        std::vector<const Detection*> dets;
        while (i < stream.size() && stream[i].frame == frame)
            dets.push_back(&stream[i++]);

        // measure current tracklets against every detection of the frame
        LabeledFrame lf;
        std::vector<const Tracklet*> rows;
        for (const auto& [agent, t] : tracklets) {
            lf.track_agents.push_back(agent);
            rows.push_back(&t);
        }
        for (const auto* d : dets) {
            const auto it = detection_agent.find(d->id);
            lf.det_agents.push_back(it != detection_agent.end() ? it->second : -1);
        }

        lf.pairs.resize(rows.size() * dets.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Tracklet& t = *rows[r];
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
            pred.pose = predict_tracklet_pose(t, frame, pp).embedding;

            for (std::size_t c = 0; c < dets.size(); ++c) {
                const PairDistances pd =
                    measure_pair(pred, *dets[c], detection_appearance(*dets[c], enc));
                lf.pairs[r * dets.size() + c] = pd;
                if (pd.dim_mismatch)
                    continue;
                const bool inlier = lf.det_agents[c] >= 0 && lf.det_agents[c] == lf.track_agents[r];
                const double ixy = std::max(pd.delta_xy, kMinInterval);
                const double in = std::max(pd.delta_n, kMinInterval);
                out.distances.appearance.push_back({pd.d_a, inlier, 1.0});
                out.distances.pose.push_back({pd.d_p, inlier, 1.0});
                out.distances.xy.push_back({pd.d_xy / ixy, inlier, ixy});
                out.distances.nearness.push_back({pd.d_n / in, inlier, in});
            }
        }
        if (!lf.pairs.empty() || !lf.det_agents.empty())
            out.frames.push_back(std::move(lf));

        // oracle update: each detection extends (or starts) its agent's tracklet
        for (const auto* d : dets) {
            const auto it = detection_agent.find(d->id);
            if (it == detection_agent.end() || it->second < 0)
                continue;
            auto t = tracklets.find(it->second);
            if (t == tracklets.end())
                tracklets.emplace(it->second, spawn_tracklet(*d, it->second));
            else
                touch_tracklet(t->second, *d, cfg, enc);
        }
    }
    return out;
}

namespace {

double inlier_median(const std::vector<LabeledSample>& samples, const char* cue) {
    std::vector<double> v;
    for (const auto& s : samples)
        if (s.inlier)
            v.push_back(s.distance);
    if (v.size() < kMinInlierSamples)
        throw std::invalid_argument(std::string("init_betas: not enough inlier samples for ") + cue);
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
}

double inlier_mean(const std::vector<LabeledSample>& samples, const char* cue) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& s : samples)
        if (s.inlier) {
            sum += s.distance;
            ++count;
        }
    if (count < kMinInlierSamples)
        throw std::invalid_argument(std::string("init_betas: not enough inlier samples for ") + cue);
    return sum / static_cast<double>(count);
}

}  // namespace

BetaConfig init_betas(const LabeledDistances& d, const BetaConfig& base) {
    BetaConfig cfg = base;
    // Cauchy: median of 1/(1+beta*x) is 0.5 at beta = 1/median(x).
    // Degenerate all-zero distances clamp to kBetaMin (any scale fits them).
    const double med_a = inlier_median(d.appearance, "appearance");
    const double med_p = inlier_median(d.pose, "pose");
    cfg.beta_a = med_a > 0.0 ? std::max(1.0 / med_a, kBetaMin) : kBetaMin;
    cfg.beta_p = med_p > 0.0 ? std::max(1.0 / med_p, kBetaMin) : kBetaMin;
    // exponential on interval-normalized distances: MLE rate scale = mean
    cfg.beta_xy = std::max(inlier_mean(d.xy, "xy"), kBetaMin);
    cfg.beta_n = std::max(inlier_mean(d.nearness, "nearness"), kBetaMin);

    // beta_th: 99th percentile of the inlier total cost under the new scales,
    // evaluated with the real per-pair intervals so the threshold prices the
    // log(beta*delta) normalizers exactly as the tracker will.
    std::vector<double> inlier_costs;
    const std::size_t count =
        std::min({d.appearance.size(), d.pose.size(), d.xy.size(), d.nearness.size()});
    for (std::size_t i = 0; i < count; ++i) {
        if (!d.appearance[i].inlier)
            continue;
        PairDistances pd;
        pd.d_a = d.appearance[i].distance;
        pd.d_p = d.pose[i].distance;
        pd.d_xy = d.xy[i].distance * d.xy[i].interval;
        pd.delta_xy = d.xy[i].interval;
        pd.d_n = d.nearness[i].distance * d.nearness[i].interval;
        pd.delta_n = d.nearness[i].interval;
        inlier_costs.push_back(cost_from_distances(pd, cfg, cfg.cues));
    }
    if (!inlier_costs.empty()) {
        std::sort(inlier_costs.begin(), inlier_costs.end());
        // nearest-rank percentile: element ceil(0.99*n) in 1-based order
        std::size_t rank = static_cast<std::size_t>(
            std::ceil(0.99 * static_cast<double>(inlier_costs.size())));
        rank = std::clamp<std::size_t>(rank, 1, inlier_costs.size());
        cfg.beta_th = std::max(inlier_costs[rank - 1], kBetaMin);
    }
    cfg.validate();
    return cfg;
}

double association_error(const BetaConfig& cfg, std::span<const LabeledFrame> frames) {
    long decisions = 0;
    long wrong = 0;
    for (const auto& lf : frames) {
        const std::size_t n_tracks = lf.track_agents.size();
        const std::size_t n_dets = lf.det_agents.size();
        if (n_dets == 0)
            continue;

        CostMatrix matrix;
        matrix.rows = static_cast<int>(n_tracks);
        matrix.cols = static_cast<int>(n_dets);
        matrix.values.resize(n_tracks * n_dets);
        for (std::size_t r = 0; r < n_tracks; ++r)
            for (std::size_t c = 0; c < n_dets; ++c)
                matrix.values[r * n_dets + c] = cost_from_distances(lf.pair(r, c), cfg, cfg.cues);

        const Assignment a = solve_assignment(matrix, cfg.beta_th);
        std::vector<int> track_of_det(n_dets, -1);
        for (const auto& [r, c] : a.matches)
            track_of_det[c] = r;

        for (std::size_t c = 0; c < n_dets; ++c) {
            // ground truth: the detection belongs to the row of its agent, if
            // that agent already has a tracklet; otherwise it should stay
            // unmatched (clutter or first appearance)
            int want = -1;
            if (lf.det_agents[c] >= 0) {
                for (std::size_t r = 0; r < n_tracks; ++r)
                    if (lf.track_agents[r] == lf.det_agents[c]) {
                        want = static_cast<int>(r);
                        break;
                    }
            }
            decisions += 1;
            if (track_of_det[c] != want)
                wrong += 1;
        }
    }
    if (decisions == 0)
        return 0.0;
    return static_cast<double>(wrong) / static_cast<double>(decisions);
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double initial_step, int max_iters,
                             double diameter_tol) {
    const std::size_t n = x0.size();
    if (n == 0)
        throw std::invalid_argument("nelder_mead: empty start point");

    struct Vertex {
        std::vector<double> x;
        double fx;
    };
    std::vector<Vertex> simplex;
    simplex.push_back({x0, f(x0)});
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x = x0;
        x[i] += initial_step;
        simplex.push_back({x, f(x)});
    }

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    Vertex best = simplex.front();
    for (const auto& v : simplex)
        if (v.fx < best.fx)
            best = v;

    int iter = 0;
    for (; iter < max_iters; ++iter) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; });
        if (simplex.front().fx < best.fx)
            best = simplex.front();

        double diameter = 0.0;
        for (std::size_t i = 1; i < simplex.size(); ++i)
            for (std::size_t d = 0; d < n; ++d)
                diameter = std::max(diameter, std::abs(simplex[i].x[d] - simplex[0].x[d]));
        if (diameter < diameter_tol)
            break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < n; ++d)
                centroid[d] += simplex[i].x[d] / static_cast<double>(n);

        Vertex& worst = simplex.back();
        const double f_best = simplex.front().fx;
        const double f_second = simplex[n - 1].fx;

        std::vector<double> xr(n);
        for (std::size_t d = 0; d < n; ++d)
            xr[d] = centroid[d] + alpha * (centroid[d] - worst.x[d]);
        const double fr = f(xr);

        if (fr < f_best) {
            std::vector<double> xe(n);
            for (std::size_t d = 0; d < n; ++d)
                xe[d] = centroid[d] + gamma * (centroid[d] - worst.x[d]);
            const double fe = f(xe);
            if (fe < fr)
                worst = {xe, fe};
            else
                worst = {xr, fr};
            continue;
        }
        if (fr < f_second) {
            worst = {xr, fr};
            continue;
        }

        std::vector<double> xc(n);
        if (fr < worst.fx) {  // outside contraction
            for (std::size_t d = 0; d < n; ++d)
                xc[d] = centroid[d] + rho * (xr[d] - centroid[d]);
        } else {  // inside contraction
            for (std::size_t d = 0; d < n; ++d)
                xc[d] = centroid[d] + rho * (worst.x[d] - centroid[d]);
        }
        const double fc = f(xc);
        if (fc < std::min(fr, worst.fx)) {
            worst = {xc, fc};
            continue;
        }

        // shrink toward the best vertex
        for (std::size_t i = 1; i < simplex.size(); ++i) {
            for (std::size_t d = 0; d < n; ++d)
                simplex[i].x[d] = simplex[0].x[d] + sigma * (simplex[i].x[d] - simplex[0].x[d]);
            simplex[i].fx = f(simplex[i].x);
        }
    }

    for (const auto& v : simplex)
        if (v.fx < best.fx)
            best = v;
    return {best.x, best.fx, iter};
}

BetaConfig optimize_betas(const BetaConfig& init, std::span<const LabeledFrame> frames,
                          int max_iters) {
    init.validate();
    const double f_init = association_error(init, frames);
    if (f_init == 0.0)
        return init;  // nothing to improve

    const auto apply = [&init](const std::vector<double>& log_betas) {
        BetaConfig cfg = init;
        cfg.beta_a = std::exp(log_betas[0]);
        cfg.beta_p = std::exp(log_betas[1]);
        cfg.beta_xy = std::exp(log_betas[2]);
        cfg.beta_n = std::exp(log_betas[3]);
        cfg.beta_th = std::exp(log_betas[4]);
        return cfg;
    };
    const auto loss = [&](const std::vector<double>& log_betas) {
        return association_error(apply(log_betas), frames);
    };

    const std::vector<double> x0 = {std::log(init.beta_a), std::log(init.beta_p),
                                    std::log(init.beta_xy), std::log(init.beta_n),
                                    std::log(init.beta_th)};
    const NelderMeadResult r = nelder_mead(loss, x0, 0.7, max_iters, 1e-4);
    if (r.fx >= f_init)
        return init;
    return apply(r.x);
}

}  // namespace track3d
