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

#include <doctest.h>

#include <cmath>

#include "core/simulator.hpp"
#include "core/tuning.hpp"
#include "helpers.hpp"

using namespace track3d;

namespace {

std::vector<LabeledSample> constant_inliers(std::size_t count, double value) {
    return std::vector<LabeledSample>(count, LabeledSample{value, true});
}

// two tracks, two detections; pair distances make the diagonal cheap
LabeledFrame clean_frame() {
    LabeledFrame f;
    f.track_agents = {0, 1};
    f.det_agents = {0, 1};
    PairDistances own;
    own.d_a = 0.01;
    own.d_p = 0.01;
    own.d_xy = 0.5;
    own.delta_xy = 5.0;
    own.d_n = 0.001;
    own.delta_n = 0.1;
    PairDistances other = own;
    other.d_a = 4.0;
    other.d_p = 4.0;
    other.d_xy = 200.0;
    other.d_n = 0.8;
    f.pairs = {own, other, other, own};
    return f;
}

double rosenbrock(const std::vector<double>& x) {
    const double a = 1.0 - x[0];
    const double b = x[1] - x[0] * x[0];
    return a * a + 100.0 * b * b;
}

}  // namespace

TEST_SUITE("tuning") {

TEST_CASE("init_betas median rule") {
    LabeledDistances d;
    d.appearance = constant_inliers(150, 2.0);
    d.pose = constant_inliers(150, 0.5);
    d.xy = constant_inliers(150, 1.5);
    d.nearness = constant_inliers(150, 0.25);
    const BetaConfig cfg = init_betas(d, BetaConfig{});
    CHECK(cfg.beta_a == doctest::Approx(0.5));     // 1 / median(2.0)
    CHECK(cfg.beta_p == doctest::Approx(2.0));     // 1 / median(0.5)
    CHECK(cfg.beta_xy == doctest::Approx(1.5));    // mean
    CHECK(cfg.beta_n == doctest::Approx(0.25));    // mean
    CHECK(cfg.beta_th > 0.0);
}

TEST_CASE("init_betas recovers an exponential scale from samples") {
    SplitMix64 rng(8);
    LabeledDistances d;
    d.appearance = constant_inliers(10000, 1.0);
    d.pose = constant_inliers(10000, 1.0);
    d.nearness = constant_inliers(10000, 0.5);
    for (int i = 0; i < 10000; ++i) {
        double u = rng.uniform();
        while (u <= 0.0)
            u = rng.uniform();
        d.xy.push_back({-3.0 * std::log(u), true});  // Exponential with mean 3
    }
    const BetaConfig cfg = init_betas(d, BetaConfig{});
    CHECK(cfg.beta_xy == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("init_betas degenerate and error paths") {
    LabeledDistances zeros;
    zeros.appearance = constant_inliers(200, 0.0);
    zeros.pose = constant_inliers(200, 0.0);
    zeros.xy = constant_inliers(200, 0.0);
    zeros.nearness = constant_inliers(200, 0.0);
    const BetaConfig cfg = init_betas(zeros, BetaConfig{});
    CHECK(cfg.beta_a == doctest::Approx(kBetaMin));
    CHECK(cfg.beta_xy == doctest::Approx(kBetaMin));

    LabeledDistances sparse;
    sparse.appearance = constant_inliers(10, 1.0);
    sparse.pose = constant_inliers(200, 1.0);
    sparse.xy = constant_inliers(200, 1.0);
    sparse.nearness = constant_inliers(200, 1.0);
    CHECK_THROWS_AS(init_betas(sparse, BetaConfig{}), std::invalid_argument);
}

TEST_CASE("association error counting") {
    BetaConfig cfg;
    SUBCASE("clean frames score zero") {
        const std::vector<LabeledFrame> frames(25, clean_frame());
        CHECK(association_error(cfg, frames) == doctest::Approx(0.0));
    }
    SUBCASE("inverted labels score one") {
        LabeledFrame f = clean_frame();
        std::swap(f.det_agents[0], f.det_agents[1]);  // truth says the cross pairing
        const std::vector<LabeledFrame> frames(10, f);
        CHECK(association_error(cfg, frames) == doctest::Approx(1.0));
    }
    SUBCASE("one wrong non-match among fifty decisions") {
        std::vector<LabeledFrame> frames(25, clean_frame());
        // in one frame, detection 0 drifts out of reach of every track: it
        // stays unmatched although it belongs to agent 0
        frames[7].pairs[0].d_xy = 1e7;
        frames[7].pairs[2].d_xy = 1e7;
        CHECK(association_error(cfg, frames) == doctest::Approx(0.02));
    }
}

TEST_CASE("nelder_mead solves Rosenbrock from the classic start") {
    const NelderMeadResult r = nelder_mead(rosenbrock, {-1.2, 1.0}, 0.5, 500, 1e-10);
    CHECK(r.fx < 1e-6);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(r.iterations <= 500);
}

TEST_CASE("nelder_mead matches a grid-search oracle on a convex bowl") {
    const auto bowl = [](const std::vector<double>& x) {
        return (x[0] - 1.3) * (x[0] - 1.3) + 2.0 * (x[1] + 0.4) * (x[1] + 0.4);
    };
    // brute-force oracle over a fine grid
    double best = 1e300, bx = 0, by = 0;
    for (double x = -3.0; x <= 3.0; x += 0.001) {
        const double fy = bowl({x, -0.4});
        if (fy < best) {
            best = fy;
            bx = x;
            by = -0.4;
        }
    }
    for (double y = -3.0; y <= 3.0; y += 0.001) {
        const double fy = bowl({bx, y});
        if (fy < best) {
            best = fy;
            by = y;
        }
    }
    const NelderMeadResult r = nelder_mead(bowl, {2.5, 2.5}, 0.5, 500, 1e-12);
    CHECK(std::abs(r.x[0] - bx) < 1e-2);
    CHECK(std::abs(r.x[1] - by) < 1e-2);
}

TEST_CASE("optimize_betas returns init when the error is already zero") {
    const std::vector<LabeledFrame> frames(20, clean_frame());
    BetaConfig init;
    init.beta_a = 2.5;
    const BetaConfig out = optimize_betas(init, frames);
    CHECK(out.beta_a == init.beta_a);
    CHECK(out.beta_th == init.beta_th);
}

TEST_CASE("optimize_betas never returns something worse than init") {
    // noisy crowd data; deliberately bad init
    const SimulationOutput sim = render_detections(make_crowd(5, 6));
    const HarvestResult h =
        harvest_distances(sim.detections, testutil::agent_of_detection(sim), BetaConfig{});
    BetaConfig init;
    init.beta_a = 40.0;
    init.beta_p = 0.01;
    init.beta_xy = 30.0;
    init.beta_n = 0.02;
    init.beta_th = 0.5;
    const double before = association_error(init, h.frames);
    const BetaConfig tuned = optimize_betas(init, h.frames);
    const double after = association_error(tuned, h.frames);
    CHECK(after <= before);
    CHECK(tuned.beta_a > 0.0);
    CHECK(tuned.beta_th > 0.0);
}

TEST_CASE("harvest separates inliers from outliers on clean data") {
    const SimulationOutput sim = render_detections(make_crossing(0));
    const HarvestResult h =
        harvest_distances(sim.detections, testutil::agent_of_detection(sim), BetaConfig{});

    std::size_t inliers = 0, outliers = 0;
    double max_inlier = 0.0, min_outlier = 1e300;
    for (const auto& s : h.distances.appearance) {
        if (s.inlier) {
            ++inliers;
            max_inlier = std::max(max_inlier, s.distance);
        } else {
            ++outliers;
            min_outlier = std::min(min_outlier, s.distance);
        }
    }
    CHECK(inliers > 100);
    CHECK(outliers > 100);
    CHECK(max_inlier < 1e-9);    // noise-free: own appearance matches exactly
    CHECK(min_outlier > 0.1);

    SUBCASE("single-agent stream yields no outlier pairs") {
        Scenario solo = make_crossing(0);
        solo.agents.resize(1);
        const SimulationOutput ss = render_detections(solo);
        const HarvestResult hs =
            harvest_distances(ss.detections, testutil::agent_of_detection(ss), BetaConfig{});
        for (const auto& s : hs.distances.appearance)
            CHECK(s.inlier);
    }
}

TEST_CASE("harvested noise matches the analytic noise model within 10%") {
    // Constant depth keeps the pixel paths exactly linear, so the inlier
    // normalized xy distance follows the textbook regression-residual model:
    //   E[ chi_2 / (t_q * sqrt((X1+X2)/df)) ]
    //     = sqrt(pi/2) * sqrt(df) * E[1/sqrt(chi2_{2 df})] / t_q
    // with df = w-2 and t_q the interval quantile. The sigma cancels.
    Scenario s;
    s.name = "long_walk";
    s.frames = 800;
    s.noise.sigma_xy = 2.0;
    for (int k = 0; k < 2; ++k) {
        AgentSpec a;
        a.id = k;
        const double z = k == 0 ? 5.0 : 7.0;
        a.waypoints = {{0, {-2.0 + 4.0 * k, 0.3 * k, z}}, {799, {2.0 - 4.0 * k, 0.3 * k, z}}};
        a.appearance = {k == 0 ? 1.0 : 0.0, 0.5, 0.2, 0.0};
        a.pose_base = {0.1, 0.4 * k};
        a.pose_drift = {0.0, 0.0};
        s.agents.push_back(std::move(a));
    }
    const SimulationOutput sim = render_detections(s);
    const BetaConfig cfg;
    const HarvestResult h =
        harvest_distances(sim.detections, testutil::agent_of_detection(sim), cfg);

    double mean = 0.0;
    std::size_t count = 0;
    for (std::size_t fi = 30; fi < h.frames.size(); ++fi) {  // steady state only
        const LabeledFrame& lf = h.frames[fi];
        for (std::size_t r = 0; r < lf.track_agents.size(); ++r)
            for (std::size_t c = 0; c < lf.det_agents.size(); ++c)
                if (lf.det_agents[c] == lf.track_agents[r]) {
                    const PairDistances& pd = lf.pair(r, c);
                    mean += pd.d_xy / std::max(pd.delta_xy, kMinInterval);
                    ++count;
                }
    }
    REQUIRE(count > 1000);
    mean /= static_cast<double>(count);

    const double df = cfg.window - 2;  // 18
    const double t_q = 2.100922040;    // frozen t(0.975, 18)
    const double inv_chi = std::exp(std::lgamma((2.0 * df - 1.0) / 2.0) -
                                    std::lgamma(2.0 * df / 2.0)) /
                           std::sqrt(2.0);
    const double expected =
        std::sqrt(3.14159265358979323846 / 2.0) * std::sqrt(df) * inv_chi / t_q;
    CHECK(mean == doctest::Approx(expected).epsilon(0.10));
}

}  // TEST_SUITE
