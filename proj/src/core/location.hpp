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

#include <span>
#include <vector>

#include "core/types.hpp"

namespace track3d {

// One scalar observation on the regression abscissa (the true frame index,
// so occlusion gaps stretch the spacing instead of being collapsed).
struct Observation {
    double t = 0.0;
    double value = 0.0;
};

// Ordinary least squares state over a trailing window, everything the
// prediction interval needs: residual MSE, abscissa mean and spread.
struct RegressionFit {
    double slope = 0.0;
    double intercept = 0.0;
    double mse = 0.0;
    double t_mean = 0.0;
    double sxx = 0.0;       // sum of (t - t_mean)^2
    int points_used = 0;
    bool degenerate = false;  // fewer than two distinct abscissae

    double predict(double t) const { return intercept + slope * t; }
};

// nearness = log(1/z); throws for z <= 0.
double to_nearness(double z);

// Least-squares line over the last `window` observations. A single point or
// repeated abscissae produce a degenerate constant fit at the mean value.
// MSE is SSE/(points-2) for points > 2, else 0.
RegressionFit fit_line(std::span<const Observation> points, int window);

// Quantile of Student's t distribution with `df` degrees of freedom,
// computed by bisecting the regularized incomplete beta CDF.
double student_t_quantile(double p, int df);

// Half-width of the two-sided prediction interval at `confidence` for a new
// observation at target_t:
//   delta = t_quantile * sqrt(MSE * (1 + 1/w + (t'-t_mean)^2 / sxx))
// Degenerate fits and fits with fewer than three points fall back to
// `degenerate_floor`; an exact fit (MSE == 0, >= 3 points) yields 0.
double prediction_interval(const RegressionFit& fit, double target_t, double confidence,
                           double degenerate_floor);

// Per-coordinate extrapolation of a tracklet's location history.
struct LocationForecast {
    double x = 0.0;
    double y = 0.0;
    double n = 0.0;
    RegressionFit fit_x;
    RegressionFit fit_y;
    RegressionFit fit_n;
};

LocationForecast predict_location(const Tracklet& t, long target_frame, const BetaConfig& cfg);

}  // namespace track3d
