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

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace track3d {

// Raised when internal bookkeeping breaks an invariant. The CLI maps this
// to exit code 2, everything input-related to exit code 1.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

// UV texture of a person plus a per-pixel visibility mask.
// texture is channel-major: texture[c*H*W + r*W + col], values in [0,1].
// visibility has one channel of the same H x W, values in [0,1].
struct AppearanceMap {
    int height = 0;
    int width = 0;
    std::vector<double> texture;
    std::vector<double> visibility;

    std::size_t pixels() const { return static_cast<std::size_t>(height) * width; }
    double tex(int c, int r, int col) const {
        return texture[static_cast<std::size_t>(c) * pixels() + static_cast<std::size_t>(r) * width + col];
    }
    double vis(int r, int col) const {
        return visibility[static_cast<std::size_t>(r) * width + col];
    }

    static AppearanceMap uniform(int size, double tex_value, double vis_value);
    void validate() const;
};

// Image-plane position of the root joint plus depth in two parameterizations:
// nearness n = -ln(z) is what prediction runs on, z is kept for diagnostics.
struct Location3D {
    double x = 0.0;
    double y = 0.0;
    double n = 0.0;
    double z = 1.0;

    static Location3D from_depth(double x, double y, double z);
    static Location3D from_nearness(double x, double y, double n);
    void validate() const;
};

// One person observation in one frame. Appearance arrives either as a raw
// UV map or as a precomputed embedding; at least one must be present.
struct Detection {
    long frame = 0;
    std::string id;
    std::array<double, 4> bbox{0, 0, 0, 0};  // x_min, y_min, width, height
    std::optional<AppearanceMap> appearance_map;
    std::optional<std::vector<double>> appearance_embedding;
    std::vector<double> pose_embedding;
    Location3D location;
    // Optional externally predicted future poses, horizon rows of pose dim each.
    std::optional<std::vector<std::vector<double>>> predicted_poses;

    void validate() const;
};

enum class PoseBackend { kLastValue, kLinearExtrapolation, kExternal };
enum class EncoderMode { kPassthrough, kDownsampleFlatten };

// Which similarity cues participate in the association cost. Shot frames
// force xy and nearness off; ablation studies toggle the rest.
struct CueMask {
    bool appearance = true;
    bool pose = true;
    bool xy = true;
    bool nearness = true;
};

// All engine parameters: the five association scales, the appearance blend
// rate, regression window, interval confidence and lifecycle limits.
struct BetaConfig {
    double beta_a = 1.0;
    double beta_p = 1.0;
    double beta_xy = 1.0;
    double beta_n = 1.0;
    double beta_th = 10.0;
    double alpha_0 = 0.1;       // appearance blend rate
    int window = 20;            // regression window w
    double confidence = 0.95;   // prediction-interval confidence
    int t_max = 24;             // max unmatched age before a track dies
    int horizon = 12;           // pose prediction horizon c
    int pose_window = 12;       // history length fed to the pose predictor
    double delta_floor_xy = 5.0;  // interval fallback for degenerate fits, pixels
    double delta_floor_n = 0.1;   // interval fallback for nearness
    bool normalized_cost = true;  // keep the per-pair log(beta*delta) terms
    CueMask cues;
    PoseBackend pose_backend = PoseBackend::kLinearExtrapolation;
    EncoderMode encoder_mode = EncoderMode::kDownsampleFlatten;
    int encoder_grid = 4;
    int map_size = 64;

    void validate() const;
};

struct LocationSample {
    long frame = 0;
    Location3D location;
};

struct PoseSample {
    long frame = 0;
    std::vector<double> pose;
};

// Evolving state of one identity. Appearance lives in whichever form the
// first detection carried; histories are bounded rings (location: window
// entries, pose: max(2*horizon, window) entries).
struct Tracklet {
    long id = -1;
    std::optional<AppearanceMap> appearance_map;
    std::optional<std::vector<double>> appearance_embedding;
    std::vector<LocationSample> locations;
    std::vector<PoseSample> poses;
    std::optional<std::vector<std::vector<double>>> external_poses;
    long external_pose_frame = -1;
    long first_frame = -1;
    long last_matched_frame = -1;
    long observations = 0;
    int age = 0;
    bool alive = true;

    long last_frame() const { return locations.empty() ? -1 : locations.back().frame; }
};

// Per-frame forecast of a tracklet, ready for cost computation.
struct TrackletPrediction {
    std::vector<double> appearance;
    std::vector<double> pose;
    bool pose_clamped = false;
    double x = 0.0;
    double y = 0.0;
    double n = 0.0;
    double delta_x = 0.0;
    double delta_y = 0.0;
    double delta_n = 0.0;

    double delta_xy() const { return std::hypot(delta_x, delta_y); }
};

}  // namespace track3d
