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

#include "core/appearance.hpp"

#include <algorithm>
#include <cmath>

namespace track3d {

int AppearanceEncoder::grid() const {
    const int g = static_cast<int>(std::lround(std::sqrt(output_dim / 3.0)));
    return std::max(1, g);
}

void AppearanceEncoder::validate() const {
    if (mode == EncoderMode::kDownsampleFlatten) {
        const int g = grid();
        if (3 * g * g != output_dim)
            throw std::invalid_argument("encoder: output_dim must be 3*g^2 for downsample_flatten");
    }
}

AppearanceEncoder AppearanceEncoder::from_config(const BetaConfig& cfg) {
    AppearanceEncoder enc;
    enc.mode = cfg.encoder_mode;
    enc.output_dim = 3 * cfg.encoder_grid * cfg.encoder_grid;
    return enc;
}

AppearanceMap aggregate(const AppearanceMap& prev, const AppearanceMap& obs, double alpha_0) {
    if (prev.height != obs.height || prev.width != obs.width)
        throw std::invalid_argument("aggregate: map dimensions differ");
    if (!(alpha_0 > 0.0 && alpha_0 <= 1.0))
        throw std::invalid_argument("aggregate: alpha_0 must be in (0,1]");

    AppearanceMap out = prev;
    const std::size_t px = prev.pixels();
    for (std::size_t p = 0; p < px; ++p) {
        const bool prev_vis = prev.visibility[p] >= kVisibilityThreshold;
        const bool obs_vis = obs.visibility[p] >= kVisibilityThreshold;
        double alpha = 0.0;  // only prev visible, or neither: keep prev
        if (prev_vis && obs_vis)
            alpha = alpha_0;
        else if (obs_vis)
            alpha = 1.0;
        if (alpha > 0.0) {
            for (int c = 0; c < 3; ++c) {
                const std::size_t i = static_cast<std::size_t>(c) * px + p;
                out.texture[i] = (1.0 - alpha) * prev.texture[i] + alpha * obs.texture[i];
            }
        }
        out.visibility[p] = std::max(prev.visibility[p], obs.visibility[p]);
    }
    return out;
}

std::vector<double> blend_embedding(const std::vector<double>& prev,
                                    const std::vector<double>& obs, double alpha_0) {
    if (prev.size() != obs.size())
        throw std::invalid_argument("blend_embedding: dimension mismatch");
    std::vector<double> out(prev.size());
    for (std::size_t i = 0; i < prev.size(); ++i)
        out[i] = (1.0 - alpha_0) * prev[i] + alpha_0 * obs[i];
    return out;
}

std::vector<double> encode(const AppearanceMap& map, const AppearanceEncoder& enc) {
    map.validate();
    enc.validate();

    if (enc.mode == EncoderMode::kPassthrough)
        return map.texture;

    const int g = enc.grid();
    std::vector<double> out(static_cast<std::size_t>(3) * g * g, 0.0);
    std::vector<double> weight(static_cast<std::size_t>(g) * g, 0.0);
    const std::size_t px = map.pixels();

    for (int r = 0; r < map.height; ++r) {
        const int gr = std::min(g - 1, r * g / map.height);
        for (int col = 0; col < map.width; ++col) {
            const int gc = std::min(g - 1, col * g / map.width);
            const std::size_t p = static_cast<std::size_t>(r) * map.width + col;
            if (map.visibility[p] < kVisibilityThreshold)
                continue;
            const std::size_t cell = static_cast<std::size_t>(gr) * g + gc;
            weight[cell] += 1.0;
            for (int c = 0; c < 3; ++c)
                out[static_cast<std::size_t>(c) * g * g + cell] += map.texture[static_cast<std::size_t>(c) * px + p];
        }
    }
    for (std::size_t cell = 0; cell < weight.size(); ++cell) {
        if (weight[cell] == 0.0)
            continue;  // no visible texel in the cell: stays 0
        for (int c = 0; c < 3; ++c)
            out[static_cast<std::size_t>(c) * g * g + cell] /= weight[cell];
    }
    return out;
}

std::vector<double> detection_appearance(const Detection& d, const AppearanceEncoder& enc) {
    if (d.appearance_embedding)
        return *d.appearance_embedding;
    if (d.appearance_map)
        return encode(*d.appearance_map, enc);
    throw std::invalid_argument("detection_appearance: detection has no appearance");
}

std::vector<double> predict_appearance(const Tracklet& t, const AppearanceEncoder& enc) {
    if (t.appearance_map)
        return encode(*t.appearance_map, enc);
    if (t.appearance_embedding)
        return *t.appearance_embedding;
    throw std::invalid_argument("predict_appearance: tracklet has no appearance state");
}

}  // namespace track3d
