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

#include "core/location.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace track3d {

double to_nearness(double z) {
    if (!(z > 0.0))
        throw std::invalid_argument("to_nearness: depth must be > 0");
    return -std::log(z);
}

RegressionFit fit_line(std::span<const Observation> points, int window) {
    if (points.empty())
        throw std::invalid_argument("fit_line: no observations");
    if (window < 1)
        throw std::invalid_argument("fit_line: window must be >= 1");

    const std::size_t use = std::min<std::size_t>(points.size(), static_cast<std::size_t>(window));
    const auto tail = points.subspan(points.size() - use, use);

    RegressionFit fit;
    fit.points_used = static_cast<int>(use);

    double t_sum = 0.0, v_sum = 0.0;
    for (const auto& p : tail) {
        t_sum += p.t;
        v_sum += p.value;
    }
    const double m = static_cast<double>(use);
    fit.t_mean = t_sum / m;
    const double v_mean = v_sum / m;

    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : tail) {
        const double dt = p.t - fit.t_mean;
        sxx += dt * dt;
        sxy += dt * (p.value - v_mean);
    }
    fit.sxx = sxx;

    if (sxx == 0.0) {
        // one point or repeated abscissae: constant fit at the mean
        fit.degenerate = true;
        fit.slope = 0.0;
        fit.intercept = v_mean;
        fit.mse = 0.0;
        return fit;
    }

    fit.slope = sxy / sxx;
    fit.intercept = v_mean - fit.slope * fit.t_mean;

    if (use > 2) {
        double sse = 0.0;
        for (const auto& p : tail) {
            const double r = p.value - fit.predict(p.t);
            sse += r * r;
        }
        fit.mse = std::max(0.0, sse / (m - 2.0));
    }
    return fit;
}

namespace {

// ln Gamma, Lanczos approximation.
double log_gamma(double x) {
    static const double cof[6] = {76.18009172947146,  -86.50532032941677, 24.01409824083091,
                                  -1.231739572450155, 0.1208650973866179e-2, -0.5395239384953e-5};
    double y = x;
    double tmp = x + 5.5;
    tmp -= (x + 0.5) * std::log(tmp);
    double ser = 1.000000000190015;
    for (double c : cof)
        ser += c / ++y;
    return -tmp + std::log(2.5066282746310005 * ser / x);
}

// Continued-fraction kernel of the incomplete beta function (Lentz).
double beta_cont_frac(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kFpMin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_bt =
        log_gamma(a + b) - log_gamma(a) - log_gamma(b) + a * std::log(x) + b * std::log(1.0 - x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0))
        return bt * beta_cont_frac(a, b, x) / a;
    return 1.0 - bt * beta_cont_frac(b, a, 1.0 - x) / b;
}

// CDF of Student's t at x >= 0.
double student_t_cdf(double x, int df) {
    const double v = static_cast<double>(df);
    const double ib = reg_inc_beta(v / 2.0, 0.5, v / (v + x * x));
    return 1.0 - 0.5 * ib;
}

}  // namespace

double student_t_quantile(double p, int df) {
    if (df < 1)
        throw std::invalid_argument("student_t_quantile: df must be >= 1");
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("student_t_quantile: p must be in (0,1)");
    if (p == 0.5) return 0.0;
    const bool upper = p > 0.5;
    const double target = upper ? p : 1.0 - p;

    // quantiles repeat across fits: memoize per (df, probability)
    static std::map<std::pair<int, double>, double> cache;
    static std::mutex cache_mutex;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({df, target});
        if (it != cache.end()) return upper ? it->second : -it->second;
    }

    double lo = 0.0, hi = 1.0;
    while (student_t_cdf(hi, df) < target) {
        hi *= 2.0;
        if (hi > 1e12)
            throw internal_error("student_t_quantile: bracket expansion failed");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_cdf(mid, df) < target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13 * std::max(1.0, hi)) break;
    }
    const double q = 0.5 * (lo + hi);

    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache[{df, target}] = q;
    }
    return upper ? q : -q;
}

double prediction_interval(const RegressionFit& fit, double target_t, double confidence,
                           double degenerate_floor) {
    if (!(confidence > 0.0 && confidence < 1.0))
        throw std::invalid_argument("prediction_interval: confidence must be in (0,1)");
    // df = w - 2 is undefined below three points; the tracker still needs a
    // usable width there, hence the configured floor.
    if (fit.degenerate || fit.points_used <= 2)
        return degenerate_floor;
    if (fit.mse == 0.0)
        return 0.0;  // exact fit: the interval collapses, and that is informative
    const int df = fit.points_used - 2;
    const double q = student_t_quantile(1.0 - (1.0 - confidence) / 2.0, df);
    const double dt = target_t - fit.t_mean;
    return q * std::sqrt(fit.mse * (1.0 + 1.0 / fit.points_used + dt * dt / fit.sxx));
}

LocationForecast predict_location(const Tracklet& t, long target_frame, const BetaConfig& cfg) {
    if (t.locations.empty())
        throw std::invalid_argument("predict_location: tracklet has no location history");
    if (target_frame <= t.last_frame())
        throw std::invalid_argument("predict_location: target frame not in the future");

    std::vector<Observation> xs, ys, ns;
    xs.reserve(t.locations.size());
    ys.reserve(t.locations.size());
    ns.reserve(t.locations.size());
    for (const auto& s : t.locations) {
        const double ft = static_cast<double>(s.frame);
        xs.push_back({ft, s.location.x});
        ys.push_back({ft, s.location.y});
        ns.push_back({ft, s.location.n});
    }

    LocationForecast f;
    f.fit_x = fit_line(xs, cfg.window);
    f.fit_y = fit_line(ys, cfg.window);
    f.fit_n = fit_line(ns, cfg.window);
    const double tt = static_cast<double>(target_frame);
    f.x = f.fit_x.predict(tt);
    f.y = f.fit_y.predict(tt);
    f.n = f.fit_n.predict(tt);
    return f;
}

}  // namespace track3d
