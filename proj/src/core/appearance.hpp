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

#include <vector>

#include "core/types.hpp"

namespace track3d {

// Visibility values are real in [0,1]; the blend-case selection binarizes
// them at this threshold.
inline constexpr double kVisibilityThreshold = 0.5;

// Deterministic stand-in for a learned appearance encoder. passthrough
// flattens the texture as-is (output_dim = 3*H*W); downsample_flatten
// averages visible texels onto a grid x grid mosaic (output_dim = 3*grid^2).
struct AppearanceEncoder {
    EncoderMode mode = EncoderMode::kDownsampleFlatten;
    int output_dim = 48;

    int grid() const;  // derived from output_dim for downsample_flatten
    void validate() const;

    static AppearanceEncoder from_config(const BetaConfig& cfg);
};

// Per-pixel blend of a tracklet's aggregated map with a new observation:
// both visible -> (1-alpha_0)*prev + alpha_0*obs, only obs -> obs, only
// prev (or neither) -> prev. Output visibility is the per-pixel max.
AppearanceMap aggregate(const AppearanceMap& prev, const AppearanceMap& obs, double alpha_0);

// Same blend rule applied to whole embedding vectors; observations carry an
// implicit scalar visibility of 1, so this is a plain exponential average.
std::vector<double> blend_embedding(const std::vector<double>& prev,
                                    const std::vector<double>& obs, double alpha_0);

std::vector<double> encode(const AppearanceMap& map, const AppearanceEncoder& enc);

// Embedding of the detection's appearance, encoding the UV map when no
// precomputed embedding is present.
std::vector<double> detection_appearance(const Detection& d, const AppearanceEncoder& enc);

// Appearance forecast of a tracklet: the current aggregate, encoded.
std::vector<double> predict_appearance(const Tracklet& t, const AppearanceEncoder& enc);

}  // namespace track3d
