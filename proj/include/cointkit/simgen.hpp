#pragma once

#include "cointkit/dataio.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <variant>
#include <vector>

namespace cointkit {

/// SplitMix64 finaliser (Steele, Lea and Flood 2014).
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of replication r in a Monte Carlo run: mix64(seed ^ mix64(r + golden gamma)).
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t r) noexcept {
    return mix64(seed ^ mix64(r + 0x9E3779B97F4A7C15ULL));
}

/// Counter-based SplitMix64 stream. Draw i is mix64(seed + (i + 1) * 0x9E3779B97F4A7C15).
/// Uniforms are ((u >> 11) + 0.5) * 2^-53, strictly inside (0, 1). Normals use the
/// Box-Muller transform on consecutive uniform pairs (u1, u2), emitting
/// sqrt(-2 ln u1) cos(2 pi u2) and then sqrt(-2 ln u1) sin(2 pi u2).
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) noexcept : seed_(seed) {}

    [[nodiscard]] std::uint64_t next_u64() noexcept;
    [[nodiscard]] double next_uniform() noexcept;
    [[nodiscard]] double next_normal() noexcept;
    [[nodiscard]] Eigen::VectorXd normals(Eigen::Index n);

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// y_t = y_{t-1} + drift + e_t, y_0 = 0. The companion x is an independent driftless walk.
struct RandomWalk {
    double drift = 0.0;
};

/// y_t = c + phi y_{t-1} + e_t. The companion x is independent white noise.
struct Ar1 {
    double phi = 0.5;
    double c = 0.0;
};

/// x_t = x_{t-1} + sigma_x u_t;  y_t = y_{t-1} + adjustment (y_{t-1} - beta x_{t-1}) + sigma_y e_t.
struct CointegratedPair {
    double beta = 3.0;
    double adjustment = -0.6;
    double sigma_x = 1.0;
    double sigma_y = 1.0;
};

/// y_t = c + sum_i phi_i y_{t-i} + sum_j theta_j x_{t-j} + e_t with x_t = x_phi x_{t-1} + u_t.
/// theta holds lags 0..q. Burn-in applies when x_phi < 1 and the phi polynomial is stable.
struct ArdlDgp {
    std::vector<double> phi{0.5};
    std::vector<double> theta{1.0};
    double c = 0.0;
    double x_phi = 1.0;
};

/// y_t = a + b x_t + e_t with (a, b) switching after the break fraction; x_t iid N(x_mean, x_sd^2).
struct BreakModel {
    double break_fraction = 0.5;
    double pre_intercept = 1.0;
    double pre_slope = 1.0;
    double post_intercept = 1.0;
    double post_slope = 1.0;
    double x_mean = 0.0;
    double x_sd = 1.0;
};

using DgpKind = std::variant<RandomWalk, Ar1, CointegratedPair, ArdlDgp, BreakModel>;

struct Dgp {
    DgpKind kind;
    Eigen::Index T = 200;
    std::uint64_t seed = 0;

    /// Throws InvalidParameters on T < 20, |phi| >= 1 for ar1, adjustment outside (-2, 0),
    /// an empty ARDL phi or theta, or a break fraction outside (0, 1).
    void validate() const;
};

inline constexpr Eigen::Index kBurnIn = 100;

/// Dataset with dependent "y" and regressor "x", monthly from 2000-01.
/// At each step the x innovation is drawn before the y innovation.
[[nodiscard]] Dataset generate(const Dgp& dgp);

}  // namespace cointkit
