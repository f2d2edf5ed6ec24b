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

#include <functional>
#include <map>

#include "core/metrics.hpp"
#include "core/simulator.hpp"

using namespace track3d;

namespace {

Box at(double x, double y) { return {x, y, 10.0, 20.0}; }

// one gt track (id 0) walking right for `frames` frames
FrameBoxes straight_gt(long frames) {
    FrameBoxes gt;
    for (long f = 0; f < frames; ++f)
        gt[f].push_back({0, at(5.0 * f, 0.0)});
    return gt;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("iou basics") {
    CHECK(iou({0, 0, 10, 10}, {0, 0, 10, 10}) == doctest::Approx(1.0));
    CHECK(iou({0, 0, 10, 10}, {20, 20, 10, 10}) == doctest::Approx(0.0));
    CHECK(iou({0, 0, 10, 10}, {5, 0, 10, 10}) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("mota worked examples") {
    SUBCASE("perfect tracking scores 1") {
        const FrameBoxes gt = straight_gt(10);
        CHECK(mota(gt, gt) == doctest::Approx(1.0));
    }
    SUBCASE("one miss and one switch on ten boxes scores 0.8") {
        const FrameBoxes gt = straight_gt(10);
        FrameBoxes pred;
        for (long f = 0; f < 10; ++f) {
            if (f == 4)
                continue;  // one FN
            pred[f].push_back({f < 7 ? 1L : 2L, at(5.0 * f, 0.0)});  // relabel at 7: one IDSW
        }
        const MatchCounts c = match_frames(gt, pred);
        CHECK(c.fn == 1);
        CHECK(c.fp == 0);
        CHECK(c.id_switches == 1);
        CHECK(mota(gt, pred) == doctest::Approx(0.8));
    }
    SUBCASE("no predictions at all scores 0") {
        const FrameBoxes gt = straight_gt(10);
        CHECK(mota(gt, {}) == doctest::Approx(0.0));
    }
    SUBCASE("empty ground truth is an error") {
        CHECK_THROWS_AS(mota({}, straight_gt(3)), std::invalid_argument);
    }
}

TEST_CASE("idf1 worked examples") {
    SUBCASE("perfect tracking scores 1") {
        const FrameBoxes gt = straight_gt(10);
        CHECK(idf1(gt, gt) == doctest::Approx(1.0));
    }
    SUBCASE("a track split in half scores 0.5") {
        const FrameBoxes gt = straight_gt(10);
        FrameBoxes pred;
        for (long f = 0; f < 10; ++f)
            pred[f].push_back({f < 5 ? 7L : 8L, at(5.0 * f, 0.0)});
        // best bijection keeps 5 boxes: IDTP=5, IDFN=5, IDFP=5
        CHECK(idf1(gt, pred) == doctest::Approx(0.5));
    }
    SUBCASE("no predictions scores 0") {
        CHECK(idf1(straight_gt(10), {}) == doctest::Approx(0.0));
    }
}

TEST_CASE("id switch counting") {
    FrameBoxes gt;
    for (long f = 0; f < 10; ++f) {
        gt[f].push_back({0, at(0.0, 0.0)});
        gt[f].push_back({1, at(100.0, 0.0)});
    }
    SUBCASE("consistent labels count zero") {
        CHECK(id_switches(gt, gt) == 0);
    }
    SUBCASE("single relabel counts one") {
        FrameBoxes pred;
        for (long f = 0; f < 10; ++f) {
            pred[f].push_back({f < 6 ? 10L : 11L, at(0.0, 0.0)});
            pred[f].push_back({20, at(100.0, 0.0)});
        }
        CHECK(id_switches(gt, pred) == 1);
    }
    SUBCASE("a label swap between two agents counts two") {
        FrameBoxes pred;
        for (long f = 0; f < 10; ++f) {
            // hand trace: gt0 matches 10,10,10,11,... gt1 matches 11,11,11,10,...
            pred[f].push_back({f < 3 ? 10L : 11L, at(0.0, 0.0)});
            pred[f].push_back({f < 3 ? 11L : 10L, at(100.0, 0.0)});
        }
        CHECK(id_switches(gt, pred) == 2);
    }
}

TEST_CASE("metrics are invariant to relabeling prediction ids") {
    const SimulationOutput sim = render_detections(make_crowd(13, 6));
    FrameBoxes gt, pred;
    for (const auto& row : sim.ground_truth) {
        if (row.gt_id < 0)
            continue;
        gt[row.frame].push_back({row.gt_id, {row.bbox[0], row.bbox[1], row.bbox[2], row.bbox[3]}});
        // imperfect predictions: drop every 9th box, relabel one agent midway
        if (row.frame % 9 == 3 && row.gt_id == 1)
            continue;
        long pid = row.gt_id;
        if (row.gt_id == 2 && row.frame >= 50)
            pid = 17;
        pred[row.frame].push_back({pid, {row.bbox[0], row.bbox[1], row.bbox[2], row.bbox[3]}});
    }

    const auto remap = [](const FrameBoxes& boxes, const std::function<long(long)>& f) {
        FrameBoxes out;
        for (const auto& [frame, list] : boxes)
            for (const auto& b : list)
                out[frame].push_back({f(b.id), b.box});
        return out;
    };
    const FrameBoxes renamed = remap(pred, [](long id) { return 1000 - 3 * id; });

    CHECK(mota(gt, pred) == doctest::Approx(mota(gt, renamed)));
    CHECK(idf1(gt, pred) == doctest::Approx(idf1(gt, renamed)));
    CHECK(id_switches(gt, pred) == id_switches(gt, renamed));
}

TEST_CASE("greedy matching agrees with exhaustive matching on separated boxes") {
    // independent matcher: exhaustive max-cardinality then max-total-IoU
    struct Exhaustive {
        long fn = 0, fp = 0, idsw = 0, gt_total = 0;
        std::map<long, long> last;

        void frame(const std::vector<TrackedBox>& g, const std::vector<TrackedBox>& p) {
            gt_total += static_cast<long>(g.size());
            std::vector<std::pair<int, int>> best;
            double best_overlap = -1.0;
            std::vector<char> used(p.size(), 0);
            std::vector<std::pair<int, int>> current;
            std::function<void(std::size_t, double)> dfs = [&](std::size_t gi, double overlap) {
                if (gi == g.size()) {
                    if (current.size() > best.size() ||
                        (current.size() == best.size() && overlap > best_overlap)) {
                        best = current;
                        best_overlap = overlap;
                    }
                    return;
                }
                dfs(gi + 1, overlap);
                for (std::size_t pi = 0; pi < p.size(); ++pi) {
                    if (used[pi])
                        continue;
                    const double o = iou(g[gi].box, p[pi].box);
                    if (o < kIouThreshold)
                        continue;
                    used[pi] = 1;
                    current.emplace_back(static_cast<int>(gi), static_cast<int>(pi));
                    dfs(gi + 1, overlap + o);
                    current.pop_back();
                    used[pi] = 0;
                }
            };
            dfs(0, 0.0);

            fn += static_cast<long>(g.size() - best.size());
            fp += static_cast<long>(p.size() - best.size());
            for (const auto& [gi, pi] : best) {
                const auto it = last.find(g[gi].id);
                if (it != last.end() && it->second != p[pi].id)
                    ++idsw;
                last[g[gi].id] = p[pi].id;
            }
        }
    };

    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const SimulationOutput sim = render_detections(make_crowd(seed, 4));
        FrameBoxes gt, pred;
        for (const auto& row : sim.ground_truth) {
            if (row.gt_id < 0)
                continue;
            const TrackedBox b{row.gt_id, {row.bbox[0], row.bbox[1], row.bbox[2], row.bbox[3]}};
            gt[row.frame].push_back(b);
            if (!row.detection_id.empty())
                pred[row.frame].push_back(b);
        }

        Exhaustive oracle;
        for (const auto& [frame, g] : gt) {
            static const std::vector<TrackedBox> kEmpty;
            const auto pit = pred.find(frame);
            oracle.frame(g, pit != pred.end() ? pit->second : kEmpty);
        }
        const MatchCounts fast = match_frames(gt, pred);
        CHECK(fast.fn == oracle.fn);
        CHECK(fast.fp == oracle.fp);
        CHECK(fast.id_switches == oracle.idsw);
        CHECK(fast.gt_total == oracle.gt_total);
    }
}

TEST_CASE("idf1 matching is globally optimal for small id sets") {
    // pred id 5 overlaps both gt ids; the greedy per-pair choice would keep
    // gt0<->5, the optimal bijection pairs gt0<->6 and gt1<->5
    FrameBoxes gt, pred;
    for (long f = 0; f < 10; ++f) {
        gt[f].push_back({0, at(0.0, 0.0)});
        pred[f].push_back({f < 6 ? 5L : 6L, at(0.0, 0.0)});
    }
    for (long f = 10; f < 30; ++f) {
        gt[f].push_back({1, at(0.0, 0.0)});
        pred[f].push_back({5, at(0.0, 0.0)});
    }
    // exhaustive over bijections: {0->5,1->?}: 6; {0->6,1->5}: 4+20=24
    const double expected = 2.0 * 24.0 / (2.0 * 24.0 + (30.0 - 24.0) + (30.0 - 24.0));
    CHECK(idf1(gt, pred) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("idf1 equals exhaustive bijection search on random id sets") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        // up to 4 gt ids and 5 pred ids, boxes on a well-separated grid
        const int n_gt = 1 + static_cast<int>(rng.uniform() * 4.0);
        const int n_pred = 1 + static_cast<int>(rng.uniform() * 5.0);
        const long frames = 12;
        FrameBoxes gt, pred;
        long gt_total = 0, pred_total = 0;
        // tp[g][p] counts co-located frames
        std::vector<std::vector<long>> tp(n_gt, std::vector<long>(n_pred, 0));
        for (long f = 0; f < frames; ++f) {
            for (int g = 0; g < n_gt; ++g) {
                if (rng.uniform() < 0.2)
                    continue;
                gt[f].push_back({g, at(200.0 * g, 0.0)});
                ++gt_total;
            }
            for (int p = 0; p < n_pred; ++p) {
                if (rng.uniform() < 0.2)
                    continue;
                // a prediction sits on some gt id's slot (or far away)
                const int slot = static_cast<int>(rng.uniform() * (n_gt + 1));
                const double x = slot < n_gt ? 200.0 * slot : 5000.0 + 40.0 * p;
                pred[f].push_back({100 + p, at(x, 0.0)});
                ++pred_total;
                if (slot < n_gt) {
                    // count only when the gt box is present this frame
                    for (const auto& gb : gt[f])
                        if (gb.id == slot)
                            tp[slot][p] += 1;
                }
            }
        }
        if (gt_total == 0)
            continue;

        // exhaustive over injections from gt ids into pred ids
        long best_idtp = 0;
        std::vector<int> choice(n_gt, -1);
        std::vector<char> used(n_pred, 0);
        std::function<void(int, long)> dfs = [&](int g, long acc) {
            if (g == n_gt) {
                best_idtp = std::max(best_idtp, acc);
                return;
            }
            dfs(g + 1, acc);
            for (int p = 0; p < n_pred; ++p) {
                if (used[p])
                    continue;
                used[p] = 1;
                dfs(g + 1, acc + tp[g][p]);
                used[p] = 0;
            }
        };
        dfs(0, 0);
        const double expected =
            pred_total == 0 ? 0.0
                            : 2.0 * static_cast<double>(best_idtp) /
                                  static_cast<double>(gt_total + pred_total);
        CHECK(idf1(gt, pred) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("duplicate ids within a frame are rejected") {
    FrameBoxes gt = straight_gt(3);
    FrameBoxes bad = gt;
    bad[1].push_back({0, at(500.0, 0.0)});
    CHECK_THROWS_AS(match_frames(gt, bad), std::invalid_argument);
}

TEST_CASE("full report") {
    const FrameBoxes gt = straight_gt(10);
    const MetricsReport r = compute_metrics(gt, gt);
    CHECK(r.frames == 10);
    CHECK(r.gt_total == 10);
    CHECK(r.pred_total == 10);
    CHECK(r.mota == doctest::Approx(1.0));
    CHECK(r.idf1 == doctest::Approx(1.0));
    CHECK(r.id_switches == 0);
    CHECK_FALSE(r.hota.has_value());
}

}  // TEST_SUITE
