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

#include "core/types.hpp"

#include <cmath>

namespace track3d {

namespace {
constexpr double kNearnessTol = 1e-9;
}

AppearanceMap AppearanceMap::uniform(int size, double tex_value, double vis_value) {
    AppearanceMap m;
    m.height = size;
    m.width = size;
    m.texture.assign(3 * m.pixels(), tex_value);
    m.visibility.assign(m.pixels(), vis_value);
    return m;
}

void AppearanceMap::validate() const {
    if (height <= 0 || width <= 0)
        throw std::invalid_argument("appearance map: non-positive dimensions");
    if (texture.size() != 3 * pixels())
        throw std::invalid_argument("appearance map: texture size != 3*H*W");
    if (visibility.size() != pixels())
        throw std::invalid_argument("appearance map: visibility size != H*W");
    for (double v : visibility)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("appearance map: visibility outside [0,1]");
}

Location3D Location3D::from_depth(double x, double y, double z) {
    if (!(z > 0.0))
        throw std::invalid_argument("location: depth must be > 0");
    Location3D l;
    l.x = x;
    l.y = y;
    l.z = z;
    l.n = -std::log(z);
    return l;
}

Location3D Location3D::from_nearness(double x, double y, double n) {
    Location3D l;
    l.x = x;
    l.y = y;
    l.n = n;
    l.z = std::exp(-n);
    return l;
}

void Location3D::validate() const {
    if (!(z > 0.0))
        throw std::invalid_argument("location: depth must be > 0");
    if (std::abs(n + std::log(z)) > kNearnessTol)
        throw std::invalid_argument("location: nearness inconsistent with depth");
}

void Detection::validate() const {
    if (frame < 0)
        throw std::invalid_argument("detection: negative frame index");
    if (!(bbox[2] > 0.0) || !(bbox[3] > 0.0))
        throw std::invalid_argument("detection: bbox width/height must be > 0");
    if (!appearance_map && !appearance_embedding)
        throw std::invalid_argument("detection: needs an appearance map or embedding");
    if (appearance_map)
        appearance_map->validate();
    if (pose_embedding.empty())
        throw std::invalid_argument("detection: empty pose embedding");
    location.validate();
    if (predicted_poses) {
        for (const auto& row : *predicted_poses)
            if (row.size() != pose_embedding.size())
                throw std::invalid_argument("detection: predicted pose row dim mismatch");
    }
}

void BetaConfig::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0))
            throw std::invalid_argument(std::string("config: ") + name + " must be > 0");
    };
    positive(beta_a, "beta_a");
    positive(beta_p, "beta_p");
    positive(beta_xy, "beta_xy");
    positive(beta_n, "beta_n");
    positive(beta_th, "beta_th");
    if (!(alpha_0 > 0.0 && alpha_0 <= 1.0))
        throw std::invalid_argument("config: alpha_0 must be in (0,1]");
    if (window < 2)
        throw std::invalid_argument("config: window must be >= 2");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw std::invalid_argument("config: confidence must be in (0,1)");
    if (t_max < 1)
        throw std::invalid_argument("config: t_max must be >= 1");
    if (horizon < 1)
        throw std::invalid_argument("config: horizon must be >= 1");
    if (pose_window < 1)
        throw std::invalid_argument("config: pose_window must be >= 1");
    positive(delta_floor_xy, "delta_floor_xy");
    positive(delta_floor_n, "delta_floor_n");
    if (encoder_grid < 1)
        throw std::invalid_argument("config: encoder_grid must be >= 1");
    if (map_size < 1)
        throw std::invalid_argument("config: map_size must be >= 1");
}

}  // namespace track3d
