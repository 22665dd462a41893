#include "nocsforge/scheduler/dpm.hpp"

#include <cmath>

namespace nf {

MapTensor dpm_solver_solve(const EpsFn& eps_fn, const MapTensor& x_init, int steps,
                           const NoiseSchedule& schedule) {
    if (steps < 1) throw ValidationError("dpm_solver: steps must be >= 1");

    const int k_max = schedule.steps() - 1;
    const double lambda_start = schedule.log_snr(k_max);
    const double lambda_end = schedule.log_snr(0);

    // Uniform-lambda node placement, snapped to the discrete table so the
    // denoiser timestep and the solver coefficients agree exactly.
    std::vector<int> nodes(steps + 1);
    nodes[0] = k_max;
    for (int i = 1; i <= steps; ++i) {
        const double lam = lambda_start + (lambda_end - lambda_start) * i / steps;
        int k = schedule.nearest_step_for_log_snr(lam);
        if (k >= nodes[i - 1]) k = nodes[i - 1] - 1;  // keep strictly advancing
        nodes[i] = std::max(k, 0);
    }
    nodes[steps] = 0;

    MapTensor x = x_init;
    MapTensor eps_prev;
    double lambda_prev_gap = 0;

    for (int i = 0; i < steps; ++i) {
        const int k_cur = nodes[i];
        const int k_next = nodes[i + 1];
        const double lam_cur = schedule.log_snr(k_cur);
        const double lam_next = schedule.log_snr(k_next);
        const double h = lam_next - lam_cur;

        const double a_cur = schedule.sqrt_alpha_bar(k_cur);
        const double a_next = schedule.sqrt_alpha_bar(k_next);
        const double s_next = schedule.sqrt_one_minus_alpha_bar(k_next);

        const MapTensor eps_cur = eps_fn(x, k_cur);
        if (eps_cur.size() != x.size())
            throw ShapeError("dpm_solver: denoiser output shape mismatch");

        const double ratio = a_next / a_cur;
        const double c1 = s_next * std::expm1(h);
        if (i == 0) {
            // First-order (DDIM-like) step.
            for (Eigen::Index j = 0; j < x.size(); ++j)
                x.data[j] = float(ratio * x.data[j] - c1 * eps_cur.data[j]);
        } else {
            // Second-order multistep: linear extrapolation of eps in
            // lambda, integrated exactly against e^{-lambda}.
            const double c2 = s_next * (std::expm1(h) - h) / lambda_prev_gap;
            for (Eigen::Index j = 0; j < x.size(); ++j) {
                const double d = double(eps_cur.data[j]) - double(eps_prev.data[j]);
                x.data[j] = float(ratio * x.data[j] - c1 * eps_cur.data[j] - c2 * d);
            }
        }
        eps_prev = eps_cur;
        lambda_prev_gap = h;
    }
    return x;
}

NocsMap dpm_solver_sample(const EpsFn& eps_fn, int height, int width, int steps,
                          const NoiseSchedule& schedule, Rng& rng) {
    const MapTensor x_init = normal_tensor(3, height, width, rng);
    const MapTensor x0 = dpm_solver_solve(eps_fn, x_init, steps, schedule);
    return tensor_to_nocs(x0);
}

}  // namespace nf
