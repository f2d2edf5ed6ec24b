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
#include <optional>
#include <vector>

namespace track3d {

struct Box {
    double x = 0.0, y = 0.0, w = 0.0, h = 0.0;
};

double iou(const Box& a, const Box& b);

struct TrackedBox {
    long id = -1;
    Box box;
};

// frame index -> boxes present in that frame (at most one box per id).
using FrameBoxes = std::map<long, std::vector<TrackedBox>>;

inline constexpr double kIouThreshold = 0.5;

// Per-frame greedy descending-IoU matching at the 0.5 threshold, with
// identity switches counted against each ground-truth id's most recent
// previously matched prediction id.
struct MatchCounts {
    long gt_total = 0;
    long pred_total = 0;
    long matches = 0;
    long fn = 0;
    long fp = 0;
    long id_switches = 0;
};

MatchCounts match_frames(const FrameBoxes& gt, const FrameBoxes& pred);

// 1 - (FN + FP + IDSW) / gt_total; throws when gt is empty.
double mota(const FrameBoxes& gt, const FrameBoxes& pred);

// Identity F1 under the globally optimal gt-id to pred-id matching
// (maximizing box-level true positives at the 0.5 IoU threshold).
double idf1(const FrameBoxes& gt, const FrameBoxes& pred);

long id_switches(const FrameBoxes& gt, const FrameBoxes& pred);

struct MetricsReport {
    long frames = 0;
    long gt_total = 0;
    long pred_total = 0;
    long matches = 0;
    long fn = 0;
    long fp = 0;
    long id_switches = 0;
    double mota = 0.0;
    double idf1 = 0.0;
    std::optional<double> hota;  // reserved, not computed
};

MetricsReport compute_metrics(const FrameBoxes& gt, const FrameBoxes& pred);

}  // namespace track3d
