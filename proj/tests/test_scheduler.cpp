#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "nocsforge/scheduler/dpm.hpp"
#include "nocsforge/scheduler/schedule.hpp"

using namespace nf;

namespace {

// Exact posterior-mean noise prediction for scalar data x0 ~ N(mu, s0^2):
// the one case where the optimal denoiser has closed form.
struct GaussianToy {
    double mu = 1.0;
    double s0 = 0.5;
    const NoiseSchedule* schedule = nullptr;

    MapTensor eps_hat(const MapTensor& x, int k) const {
        const double ab = schedule->alpha_bar(k);
        const double coeff = std::sqrt(1.0 - ab) / (ab * s0 * s0 + (1.0 - ab));
        MapTensor out = x;
        for (Eigen::Index i = 0; i < x.size(); ++i)
            out.data[i] = float(coeff * (double(x.data[i]) - std::sqrt(ab) * mu));
        return out;
    }
};

MapTensor scalar_tensor(double v) {
    MapTensor t(1, 1, 1);
    t.data[0] = float(v);
    return t;
}

// Acklam's rational approximation of the standard normal quantile.
double inverse_normal_cdf(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > phigh) {
        q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

double run_ancestral_chain(const GaussianToy& toy, const NoiseSchedule& s, Rng& rng) {
    MapTensor x = scalar_tensor(rng.normal());
    for (int k = s.steps() - 1; k >= 1; --k)
        x = ddpm_ancestral_step(x, toy.eps_hat(x, k), k, s, rng);
    return x.data[0];
}

}  // namespace

TEST_CASE("schedule tables: monotonicity and product identity") {
    const NoiseSchedule s = NoiseSchedule::linear();
    REQUIRE(s.steps() == 1000);
    double prod = 1.0;
    double prev_beta = 0.0, prev_ab = 1.0 + 1e-15;
    for (int k = 0; k < s.steps(); ++k) {
        CHECK(s.beta(k) > prev_beta);
        CHECK(s.beta(k) < 1.0);
        CHECK(s.alpha_bar(k) < prev_ab);
        CHECK(s.alpha_bar(k) > 0.0);
        CHECK(s.alpha_bar(k) < 1.0);
        prod *= 1.0 - s.beta(k);
        CHECK(std::abs(s.alpha_bar(k) - prod) <= 1e-12);
        // Variance-preserving identity in closed form.
        const double a2 = s.sqrt_alpha_bar(k) * s.sqrt_alpha_bar(k);
        const double b2 = s.sqrt_one_minus_alpha_bar(k) * s.sqrt_one_minus_alpha_bar(k);
        CHECK(std::abs(a2 + b2 - 1.0) <= 1e-12);
        prev_beta = s.beta(k);
        prev_ab = s.alpha_bar(k);
    }
    CHECK(std::abs(s.beta(0) - 1e-4) <= 1e-15);
    CHECK(std::abs(s.beta(999) - 0.02) <= 1e-15);
}

TEST_CASE("add_noise: near identity at k=0 and exact scaling of eps") {
    const NoiseSchedule s = NoiseSchedule::linear();
    CHECK(s.sqrt_alpha_bar(0) >= 0.9999);

    Rng rng(1);
    const MapTensor x0 = normal_tensor(3, 4, 4, rng);
    const MapTensor eps = normal_tensor(3, 4, 4, rng);

    const MapTensor at0 = add_noise(x0, eps, 0, s);
    for (Eigen::Index i = 0; i < x0.size(); ++i)
        CHECK(std::abs(at0.data[i] - x0.data[i]) <= 0.02f);

    MapTensor zero(3, 4, 4);
    const MapTensor scaled = add_noise(zero, eps, 700, s);
    const float b = float(s.sqrt_one_minus_alpha_bar(700));
    for (Eigen::Index i = 0; i < eps.size(); ++i)
        CHECK(scaled.data[i] == b * eps.data[i]);

    CHECK_THROWS_AS(add_noise(x0, eps, 1000, s), ValidationError);
}

TEST_CASE("add_noise: empirical moments match the closed form") {
    const NoiseSchedule s = NoiseSchedule::linear();
    const int k = 500;
    const double x0v = 0.7;
    const int n = 100000;
    Rng rng(12345);
    double sum = 0, sum2 = 0;
    const MapTensor x0 = scalar_tensor(x0v);
    for (int i = 0; i < n; ++i) {
        MapTensor eps = scalar_tensor(rng.normal());
        const double y = add_noise(x0, eps, k, s).data[0];
        sum += y;
        sum2 += y * y;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    const double mean_expect = s.sqrt_alpha_bar(k) * x0v;
    const double var_expect = 1.0 - s.alpha_bar(k);
    const double mean_se = std::sqrt(var_expect / n);
    const double var_se = var_expect * std::sqrt(2.0 / n);
    CHECK(std::abs(mean - mean_expect) <= 3 * mean_se);
    CHECK(std::abs(var - var_expect) <= 3 * var_se);
}

TEST_CASE("ancestral step: posterior-mean identity at k=1") {
    const NoiseSchedule s = NoiseSchedule::linear();
    Rng rng(7);
    const double x0v = 0.37;
    const MapTensor x0 = scalar_tensor(x0v);
    const MapTensor eps = scalar_tensor(rng.normal());
    const MapTensor x1 = add_noise(x0, eps, 1, s);

    Rng step_rng(0);
    const MapTensor out = ddpm_ancestral_step(x1, eps, 1, s, step_rng);

    // mu_tilde = (sqrt(ab0) beta1 x0 + sqrt(a1) (1-ab0) x1) / (1-ab1)
    const double ab0 = s.alpha_bar(0), ab1 = s.alpha_bar(1);
    const double expected = (std::sqrt(ab0) * s.beta(1) * x0v +
                             std::sqrt(s.alpha(1)) * (1 - ab0) * double(x1.data[0])) /
                            (1 - ab1);
    CHECK(std::abs(out.data[0] - expected) <= 1e-6);

    CHECK_THROWS_AS(ddpm_ancestral_step(x1, eps, 0, s, step_rng), ValidationError);
}

TEST_CASE("ancestral step: deterministic given the rng seed") {
    const NoiseSchedule s = NoiseSchedule::linear();
    Rng init(3);
    const MapTensor x = normal_tensor(1, 2, 2, init);
    const MapTensor e = normal_tensor(1, 2, 2, init);
    Rng r1(55), r2(55);
    const MapTensor a = ddpm_ancestral_step(x, e, 500, s, r1);
    const MapTensor b = ddpm_ancestral_step(x, e, 500, s, r2);
    for (Eigen::Index i = 0; i < a.size(); ++i) CHECK(a.data[i] == b.data[i]);
}

TEST_CASE("analytic Gaussian: 1000-step ancestral chain recovers the data law") {
    const NoiseSchedule s = NoiseSchedule::linear();
    GaussianToy toy;
    toy.schedule = &s;
    const int n = 10000;
    Rng rng(2024);
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = run_ancestral_chain(toy, s, rng);
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean - toy.mu) <= 0.02 * std::abs(toy.mu));
    CHECK(std::abs(var - toy.s0 * toy.s0) <= 0.02 * toy.s0 * toy.s0);
}

TEST_CASE("dpm solver: steps=1 equals the closed-form first-order step") {
    const NoiseSchedule s = NoiseSchedule::linear();
    GaussianToy toy;
    toy.schedule = &s;
    const EpsFn fn = [&](const MapTensor& x, int k) { return toy.eps_hat(x, k); };

    const MapTensor x_init = scalar_tensor(0.83);
    const MapTensor out = dpm_solver_solve(fn, x_init, 1, s);

    const int kmax = s.steps() - 1;
    const double h = s.log_snr(0) - s.log_snr(kmax);
    const double ratio = s.sqrt_alpha_bar(0) / s.sqrt_alpha_bar(kmax);
    const double c1 = s.sqrt_one_minus_alpha_bar(0) * std::expm1(h);
    const double eps0 = toy.eps_hat(x_init, kmax).data[0];
    const double expected = ratio * double(x_init.data[0]) - c1 * eps0;
    CHECK(out.data[0] == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("dpm solver: 10 steps agree with the ancestral reference on the toy") {
    const NoiseSchedule s = NoiseSchedule::linear();
    GaussianToy toy;
    toy.schedule = &s;
    const EpsFn fn = [&](const MapTensor& x, int k) { return toy.eps_hat(x, k); };

    const int n = 10000;
    Rng rng_ref(77);
    double ref_sum = 0, ref_sum2 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = run_ancestral_chain(toy, s, rng_ref);
        ref_sum += x;
        ref_sum2 += x * x;
    }
    const double ref_mean = ref_sum / n;
    const double ref_var = ref_sum2 / n - ref_mean * ref_mean;

    Rng rng_dpm(78);
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = double(dpm_solver_solve(fn, scalar_tensor(rng_dpm.normal()), 10, s).data[0]);
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;

    CHECK(std::abs(mean - ref_mean) <= 0.03 * std::max(1.0, std::abs(ref_mean)));
    CHECK(std::abs(var - ref_var) <= 0.03 * ref_var);
}

TEST_CASE("dpm solver: marginal W1 error shrinks with step count") {
    const NoiseSchedule s = NoiseSchedule::linear();
    GaussianToy toy;
    toy.schedule = &s;
    const EpsFn fn = [&](const MapTensor& x, int k) { return toy.eps_hat(x, k); };

    const int n = 10000;
    // Common random numbers across step counts.
    std::vector<double> inits(n);
    Rng rng(31);
    for (auto& v : inits) v = rng.normal();

    std::vector<double> w1;
    for (const int steps : {2, 5, 10, 20}) {
        std::vector<double> samples(n);
        for (int i = 0; i < n; ++i)
            samples[i] = double(dpm_solver_solve(fn, scalar_tensor(inits[i]), steps, s).data[0]);
        std::sort(samples.begin(), samples.end());
        double acc = 0;
        for (int i = 0; i < n; ++i) {
            const double q = toy.mu + toy.s0 * inverse_normal_cdf((i + 0.5) / n);
            acc += std::abs(samples[i] - q);
        }
        w1.push_back(acc / n);
    }
    CHECK(w1[0] > w1[1]);
    CHECK(w1[1] > w1[2]);
    CHECK(w1[2] > w1[3]);
}

TEST_CASE("dpm sample: bit-identical given the seed") {
    const NoiseSchedule s = NoiseSchedule::linear();
    GaussianToy toy;
    toy.schedule = &s;
    const EpsFn fn = [&](const MapTensor& x, int k) { return toy.eps_hat(x, k); };

    Rng r1(9), r2(9);
    const NocsMap a = dpm_solver_sample(fn, 4, 4, 10, s, r1);
    const NocsMap b = dpm_solver_sample(fn, 4, 4, 10, s, r2);
    for (int v = 0; v < 4; ++v)
        for (int u = 0; u < 4; ++u) CHECK(a.values(v, u) == b.values(v, u));
}
