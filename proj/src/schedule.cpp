#include "nocsforge/scheduler/schedule.hpp"

#include <cmath>

namespace nf {

MapTensor normal_tensor(int c, int h, int w, Rng& rng) {
    MapTensor t(c, h, w);
    for (Eigen::Index i = 0; i < t.size(); ++i) t.data[i] = float(rng.normal());
    return t;
}

MapTensor nocs_to_tensor(const NocsMap& nocs) {
    MapTensor t(3, nocs.height(), nocs.width());
    for (int c = 0; c < 3; ++c)
        for (int v = 0; v < nocs.height(); ++v)
            for (int u = 0; u < nocs.width(); ++u)
                t.at(c, v, u) = nocs.values(v, u)[c] * 2.f - 1.f;
    return t;
}

NocsMap tensor_to_nocs(const MapTensor& t) {
    if (t.channels != 3) throw ShapeError("tensor_to_nocs: expected 3 channels");
    NocsMap nocs(t.height, t.width);
    for (int v = 0; v < t.height; ++v)
        for (int u = 0; u < t.width; ++u) {
            Eigen::Vector3f val;
            for (int c = 0; c < 3; ++c)
                val[c] = (std::clamp(t.at(c, v, u), -1.f, 1.f) + 1.f) * 0.5f;
            nocs.values(v, u) = val;
            nocs.validity(v, u) = 1;
        }
    return nocs;
}

NoiseSchedule NoiseSchedule::linear(int steps, double beta_start, double beta_end) {
    if (steps < 1) throw ValidationError("NoiseSchedule: need at least one step");
    if (!(beta_start > 0 && beta_end < 1 && beta_start < beta_end))
        throw ValidationError("NoiseSchedule: betas must satisfy 0 < start < end < 1");
    NoiseSchedule s;
    s.beta_.resize(steps);
    s.alpha_bar_.resize(steps);
    double prod = 1.0;
    for (int k = 0; k < steps; ++k) {
        s.beta_[k] = steps == 1 ? beta_start
                                : beta_start + (beta_end - beta_start) * k / (steps - 1);
        prod *= 1.0 - s.beta_[k];
        s.alpha_bar_[k] = prod;
    }
    return s;
}

double NoiseSchedule::log_snr(int k) const {
    const double ab = alpha_bar(k);
    return 0.5 * (std::log(ab) - std::log1p(-ab));
}

int NoiseSchedule::nearest_step_for_log_snr(double lambda) const {
    // lambda decreases with k; binary search the bracketing pair.
    int lo = 0, hi = steps() - 1;
    if (lambda >= log_snr(0)) return 0;
    if (lambda <= log_snr(hi)) return hi;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        if (log_snr(mid) >= lambda)
            lo = mid;
        else
            hi = mid;
    }
    return std::abs(log_snr(lo) - lambda) <= std::abs(log_snr(hi) - lambda) ? lo : hi;
}

MapTensor add_noise(const MapTensor& x0, const MapTensor& eps, int k, const NoiseSchedule& s) {
    if (x0.size() != eps.size()) throw ShapeError("add_noise: tensor shapes disagree");
    MapTensor out = x0;
    const float a = float(s.sqrt_alpha_bar(k));
    const float b = float(s.sqrt_one_minus_alpha_bar(k));
    out.data = a * x0.data + b * eps.data;
    return out;
}

MapTensor ddpm_ancestral_step(const MapTensor& x_k, const MapTensor& eps_hat, int k,
                              const NoiseSchedule& s, Rng& rng) {
    if (k < 1) throw ValidationError("ddpm_ancestral_step: k must be >= 1");
    if (x_k.size() != eps_hat.size())
        throw ShapeError("ddpm_ancestral_step: tensor shapes disagree");

    const double beta = s.beta(k);
    const double alpha = s.alpha(k);
    const double ab_k = s.alpha_bar(k);
    const double ab_prev = s.alpha_bar(k - 1);
    const double mean_scale = 1.0 / std::sqrt(alpha);
    const double eps_scale = beta / std::sqrt(1.0 - ab_k);
    const double sigma = k == 1 ? 0.0 : std::sqrt(beta * (1.0 - ab_prev) / (1.0 - ab_k));

    MapTensor out = x_k;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        double v = mean_scale * (double(x_k.data[i]) - eps_scale * double(eps_hat.data[i]));
        if (sigma > 0) v += sigma * rng.normal();
        out.data[i] = float(v);
    }
    return out;
}

}  // namespace nf
