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

#include "core/metrics.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "core/association.hpp"

namespace track3d {

double iou(const Box& a, const Box& b) {
    const double x1 = std::max(a.x, b.x);
    const double y1 = std::max(a.y, b.y);
    const double x2 = std::min(a.x + a.w, b.x + b.w);
    const double y2 = std::min(a.y + a.h, b.y + b.h);
    const double iw = std::max(0.0, x2 - x1);
    const double ih = std::max(0.0, y2 - y1);
    const double inter = iw * ih;
    const double uni = a.w * a.h + b.w * b.h - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

namespace {

void check_unique_ids(const std::vector<TrackedBox>& boxes, const char* what) {
    std::set<long> seen;
    for (const auto& b : boxes)
        if (!seen.insert(b.id).second)
            throw std::invalid_argument(std::string("metrics: duplicate ") + what +
                                        " id within a frame");
}

// Greedy per-frame matching, highest IoU first; ties resolved by gt index
// then pred index so the result is deterministic.
std::vector<std::pair<int, int>> greedy_match(const std::vector<TrackedBox>& gt,
                                              const std::vector<TrackedBox>& pred) {
    struct Cand {
        double overlap;
        int g, p;
    };
    std::vector<Cand> cands;
    for (int g = 0; g < static_cast<int>(gt.size()); ++g)
        for (int p = 0; p < static_cast<int>(pred.size()); ++p) {
            const double o = iou(gt[g].box, pred[p].box);
            if (o >= kIouThreshold)
                cands.push_back({o, g, p});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.overlap != b.overlap)
            return a.overlap > b.overlap;
        if (a.g != b.g)
            return a.g < b.g;
        return a.p < b.p;
    });

    std::vector<char> g_used(gt.size(), 0), p_used(pred.size(), 0);
    std::vector<std::pair<int, int>> matches;
    for (const auto& c : cands) {
        if (g_used[c.g] || p_used[c.p])
            continue;
        g_used[c.g] = 1;
        p_used[c.p] = 1;
        matches.emplace_back(c.g, c.p);
    }
    return matches;
}

}  // namespace

MatchCounts match_frames(const FrameBoxes& gt, const FrameBoxes& pred) {
    MatchCounts counts;
    std::map<long, long> last_pred_of_gt;

    std::set<long> frames;
    for (const auto& [f, _] : gt)
        frames.insert(f);
    for (const auto& [f, _] : pred)
        frames.insert(f);

    static const std::vector<TrackedBox> kEmpty;
    for (long f : frames) {
        const auto git = gt.find(f);
        const auto pit = pred.find(f);
        const auto& g = git != gt.end() ? git->second : kEmpty;
        const auto& p = pit != pred.end() ? pit->second : kEmpty;
        check_unique_ids(g, "ground-truth");
        check_unique_ids(p, "prediction");

        counts.gt_total += static_cast<long>(g.size());
        counts.pred_total += static_cast<long>(p.size());

        const auto matches = greedy_match(g, p);
        counts.matches += static_cast<long>(matches.size());
        counts.fn += static_cast<long>(g.size() - matches.size());
        counts.fp += static_cast<long>(p.size() - matches.size());

        for (const auto& [gi, pi] : matches) {
            const long gt_id = g[gi].id;
            const long pred_id = p[pi].id;
            const auto it = last_pred_of_gt.find(gt_id);
            if (it != last_pred_of_gt.end() && it->second != pred_id)
                counts.id_switches += 1;
            last_pred_of_gt[gt_id] = pred_id;
        }
    }
    return counts;
}

double mota(const FrameBoxes& gt, const FrameBoxes& pred) {
    const MatchCounts c = match_frames(gt, pred);
    if (c.gt_total == 0)
        throw std::invalid_argument("mota: no ground-truth boxes");
    return 1.0 - static_cast<double>(c.fn + c.fp + c.id_switches) / static_cast<double>(c.gt_total);
}

long id_switches(const FrameBoxes& gt, const FrameBoxes& pred) {
    return match_frames(gt, pred).id_switches;
}

double idf1(const FrameBoxes& gt, const FrameBoxes& pred) {
    // box-level true-positive counts per (gt id, pred id)
    std::set<long> gt_ids, pred_ids;
    long gt_total = 0, pred_total = 0;
    std::map<std::pair<long, long>, long> tp;

    std::set<long> frames;
    for (const auto& [f, _] : gt)
        frames.insert(f);
    for (const auto& [f, _] : pred)
        frames.insert(f);

    static const std::vector<TrackedBox> kEmpty;
    for (long f : frames) {
        const auto git = gt.find(f);
        const auto pit = pred.find(f);
        const auto& g = git != gt.end() ? git->second : kEmpty;
        const auto& p = pit != pred.end() ? pit->second : kEmpty;
        check_unique_ids(g, "ground-truth");
        check_unique_ids(p, "prediction");
        gt_total += static_cast<long>(g.size());
        pred_total += static_cast<long>(p.size());
        for (const auto& gb : g) {
            gt_ids.insert(gb.id);
            for (const auto& pb : p)
                if (iou(gb.box, pb.box) >= kIouThreshold)
                    tp[{gb.id, pb.id}] += 1;
        }
        for (const auto& pb : p)
            pred_ids.insert(pb.id);
    }

    if (gt_total == 0)
        throw std::invalid_argument("idf1: no ground-truth boxes");
    if (pred_total == 0)
        return 0.0;

    // optimal global bijection maximizing total IDTP
    const std::vector<long> gids(gt_ids.begin(), gt_ids.end());
    const std::vector<long> pids(pred_ids.begin(), pred_ids.end());
    const int n = static_cast<int>(std::max(gids.size(), pids.size()));
    std::vector<double> cost(static_cast<std::size_t>(n) * n, 0.0);
    for (std::size_t gi = 0; gi < gids.size(); ++gi)
        for (std::size_t pi = 0; pi < pids.size(); ++pi) {
            const auto it = tp.find({gids[gi], pids[pi]});
            if (it != tp.end())
                cost[gi * n + pi] = -static_cast<double>(it->second);
        }
    const std::vector<int> col_of_row = hungarian(cost, n);

    long idtp = 0;
    for (std::size_t gi = 0; gi < gids.size(); ++gi) {
        const int pi = col_of_row[gi];
        if (pi >= 0 && pi < static_cast<int>(pids.size())) {
            const auto it = tp.find({gids[gi], pids[pi]});
            if (it != tp.end())
                idtp += it->second;
        }
    }

    const long idfn = gt_total - idtp;
    const long idfp = pred_total - idtp;
    return 2.0 * static_cast<double>(idtp) / static_cast<double>(2 * idtp + idfp + idfn);
}

MetricsReport compute_metrics(const FrameBoxes& gt, const FrameBoxes& pred) {
    const MatchCounts c = match_frames(gt, pred);
    if (c.gt_total == 0)
        throw std::invalid_argument("metrics: no ground-truth boxes");

    std::set<long> frames;
    for (const auto& [f, _] : gt)
        frames.insert(f);
    for (const auto& [f, _] : pred)
        frames.insert(f);

    MetricsReport r;
    r.frames = static_cast<long>(frames.size());
    r.gt_total = c.gt_total;
    r.pred_total = c.pred_total;
    r.matches = c.matches;
    r.fn = c.fn;
    r.fp = c.fp;
    r.id_switches = c.id_switches;
    r.mota = 1.0 - static_cast<double>(c.fn + c.fp + c.id_switches) / static_cast<double>(c.gt_total);
    r.idf1 = idf1(gt, pred);
    return r;
}

}  // namespace track3d
