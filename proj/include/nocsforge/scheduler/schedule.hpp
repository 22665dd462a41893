#pragma once

#include <Eigen/Core>
#include <vector>

#include "nocsforge/core/rng.hpp"
#include "nocsforge/core/types.hpp"

namespace nf {

/// Flat CHW tensor in the diffusion working range [-1, 1].
struct MapTensor {
    int channels = 0;
    int height = 0;
    int width = 0;
    Eigen::VectorXf data;

    MapTensor() = default;
    MapTensor(int c, int h, int w) : channels(c), height(h), width(w) {
        data = Eigen::VectorXf::Zero(Eigen::Index(c) * h * w);
    }

    Eigen::Index size() const { return data.size(); }
    float& at(int c, int v, int u) { return data[(Eigen::Index(c) * height + v) * width + u]; }
    float at(int c, int v, int u) const {
        return data[(Eigen::Index(c) * height + v) * width + u];
    }
};

/// Fills a tensor with i.i.d. standard normal draws.
MapTensor normal_tensor(int c, int h, int w, Rng& rng);

/// Affine [0,1] <-> [-1,1] mapping between NOCS maps and the diffusion
/// working range. Decoding clamps to [-1,1] first.
MapTensor nocs_to_tensor(const NocsMap& nocs);
NocsMap tensor_to_nocs(const MapTensor& t);

/// DDPM variance tables: beta strictly increasing in (0,1),
/// alpha_bar[k] = prod_{j<=k} (1-beta[j]) strictly decreasing.
class NoiseSchedule {
public:
    /// Linear beta schedule (the standard DDPM default).
    static NoiseSchedule linear(int steps = 1000, double beta_start = 1e-4,
                                double beta_end = 0.02);

    int steps() const { return int(beta_.size()); }
    double beta(int k) const { return beta_[check(k)]; }
    double alpha(int k) const { return 1.0 - beta_[check(k)]; }
    double alpha_bar(int k) const { return alpha_bar_[check(k)]; }
    double sqrt_alpha_bar(int k) const { return std::sqrt(alpha_bar_[check(k)]); }
    double sqrt_one_minus_alpha_bar(int k) const { return std::sqrt(1.0 - alpha_bar_[check(k)]); }

    /// Log signal-to-noise ratio lambda(k) = log(sqrt(ab)/sqrt(1-ab)).
    double log_snr(int k) const;

    /// Timestep whose lambda is nearest to the target (lambda is
    /// monotone decreasing in k).
    int nearest_step_for_log_snr(double lambda) const;

private:
    int check(int k) const {
        if (k < 0 || k >= int(beta_.size()))
            throw ValidationError("NoiseSchedule: timestep out of range");
        return k;
    }
    std::vector<double> beta_;
    std::vector<double> alpha_bar_;
};

/// Forward process draw: sqrt(ab[k]) * x0 + sqrt(1-ab[k]) * eps.
/// Operates on working-range tensors; NOCS maps go through
/// nocs_to_tensor first.
MapTensor add_noise(const MapTensor& x0, const MapTensor& eps, int k, const NoiseSchedule& s);

/// One ancestral reverse step k -> k-1 given the predicted noise.
/// sigma[k]^2 = beta[k] * (1 - ab[k-1]) / (1 - ab[k]); the noise term is
/// dropped at k = 1.
MapTensor ddpm_ancestral_step(const MapTensor& x_k, const MapTensor& eps_hat, int k,
                              const NoiseSchedule& s, Rng& rng);

}  // namespace nf
