#include "cointkit/simgen.hpp"

#include "cointkit/error.hpp"

#include <cmath>
#include <numbers>

namespace cointkit {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

struct Draws {
    Eigen::VectorXd x;
    Eigen::VectorXd y;
};

Dataset package(const Draws& d) {
    const Eigen::Index T = d.y.size();
    std::vector<Period> index;
    index.reserve(static_cast<std::size_t>(T));
    Period p{2000, 1};
    for (Eigen::Index t = 0; t < T; ++t) {
        index.push_back(p);
        p = p.next(Frequency::Monthly);
    }
    std::vector<TimeSeries> series{TimeSeries("y", Frequency::Monthly, index, d.y),
                                   TimeSeries("x", Frequency::Monthly, index, d.x)};
    return Dataset(std::move(series), {{"y", Role::Dependent}, {"x", Role::Regressor}},
                   Provenance{"simgen", static_cast<std::size_t>(T), 0, 0, MissingPolicy::Reject});
}

bool ar_stable(const std::vector<double>& phi) {
    // companion matrix spectral radius
    const auto p = static_cast<Eigen::Index>(phi.size());
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index i = 0; i < p; ++i) C(0, i) = phi[static_cast<std::size_t>(i)];
    if (p > 1) C.bottomLeftCorner(p - 1, p - 1).setIdentity();
    return Eigen::EigenSolver<Eigen::MatrixXd>(C, false).eigenvalues().cwiseAbs().maxCoeff() < 1.0;
}

Draws run(const RandomWalk& k, Eigen::Index T, GaussianStream& g) {
    Draws d{Eigen::VectorXd(T), Eigen::VectorXd(T)};
    double x = 0.0, y = 0.0;
    for (Eigen::Index t = 0; t < T; ++t) {
        x += g.next_normal();
        y += k.drift + g.next_normal();
        d.x[t] = x;
        d.y[t] = y;
    }
    return d;
}

Draws run(const Ar1& k, Eigen::Index T, GaussianStream& g) {
    Draws d{Eigen::VectorXd(T), Eigen::VectorXd(T)};
    double y = k.c / (1.0 - k.phi);
    for (Eigen::Index t = -kBurnIn; t < T; ++t) {
        const double ex = g.next_normal();
        y = k.c + k.phi * y + g.next_normal();
        if (t >= 0) {
            d.x[t] = ex;
            d.y[t] = y;
        }
    }
    return d;
}

Draws run(const CointegratedPair& k, Eigen::Index T, GaussianStream& g) {
    Draws d{Eigen::VectorXd(T), Eigen::VectorXd(T)};
    double x = 0.0, y = 0.0;
    for (Eigen::Index t = 0; t < T; ++t) {
        const double u = g.next_normal();
        const double e = g.next_normal();
        const double y_next = y + k.adjustment * (y - k.beta * x) + k.sigma_y * e;
        x += k.sigma_x * u;
        y = y_next;
        d.x[t] = x;
        d.y[t] = y;
    }
    return d;
}

Draws run(const ArdlDgp& k, Eigen::Index T, GaussianStream& g) {
    const Eigen::Index burn = (std::abs(k.x_phi) < 1.0 && ar_stable(k.phi)) ? kBurnIn : 0;
    const Eigen::Index total = T + burn;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(total);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(total);
    for (Eigen::Index t = 0; t < total; ++t) {
        x[t] = (t > 0 ? k.x_phi * x[t - 1] : 0.0) + g.next_normal();
        double v = k.c + g.next_normal();
        for (std::size_t i = 0; i < k.phi.size(); ++i) {
            const auto lag = static_cast<Eigen::Index>(i) + 1;
            if (t - lag >= 0) v += k.phi[i] * y[t - lag];
        }
        for (std::size_t j = 0; j < k.theta.size(); ++j) {
            const auto lag = static_cast<Eigen::Index>(j);
            if (t - lag >= 0) v += k.theta[j] * x[t - lag];
        }
        y[t] = v;
    }
    return {x.tail(T), y.tail(T)};
}

Draws run(const BreakModel& k, Eigen::Index T, GaussianStream& g) {
    Draws d{Eigen::VectorXd(T), Eigen::VectorXd(T)};
    const auto brk = static_cast<Eigen::Index>(std::floor(k.break_fraction * static_cast<double>(T)));
    for (Eigen::Index t = 0; t < T; ++t) {
        const double x = k.x_mean + k.x_sd * g.next_normal();
        const double e = g.next_normal();
        const bool post = t >= brk;
        d.x[t] = x;
        d.y[t] = (post ? k.post_intercept : k.pre_intercept) + (post ? k.post_slope : k.pre_slope) * x + e;
    }
    return d;
}

}  // namespace

std::uint64_t GaussianStream::next_u64() noexcept { return mix64(seed_ + (++counter_) * kGamma); }

double GaussianStream::next_uniform() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianStream::next_normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

Eigen::VectorXd GaussianStream::normals(Eigen::Index n) {
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out[i] = next_normal();
    return out;
}

void Dgp::validate() const {
    if (T < 20) throw Error(ErrorCode::InvalidParameters, "simulated series need T >= 20");
    std::visit(
        [](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Ar1>) {
                if (!(std::abs(k.phi) < 1.0)) throw Error(ErrorCode::InvalidParameters, "ar1 requires |phi| < 1");
            } else if constexpr (std::is_same_v<K, CointegratedPair>) {
                if (!(k.adjustment > -2.0 && k.adjustment < 0.0))
                    throw Error(ErrorCode::InvalidParameters, "cointegrated_pair requires adjustment in (-2, 0)");
                if (!(k.sigma_x > 0.0 && k.sigma_y > 0.0))
                    throw Error(ErrorCode::InvalidParameters, "noise scales must be positive");
            } else if constexpr (std::is_same_v<K, ArdlDgp>) {
                if (k.phi.empty() || k.theta.empty())
                    throw Error(ErrorCode::InvalidParameters, "ardl needs at least one phi and one theta");
            } else if constexpr (std::is_same_v<K, BreakModel>) {
                if (!(k.break_fraction > 0.0 && k.break_fraction < 1.0))
                    throw Error(ErrorCode::InvalidParameters, "break fraction must lie in (0, 1)");
                if (!(k.x_sd > 0.0)) throw Error(ErrorCode::InvalidParameters, "x_sd must be positive");
            }
        },
        kind);
}

Dataset generate(const Dgp& dgp) {
    dgp.validate();
    GaussianStream g(dgp.seed);
    return package(std::visit([&](const auto& k) { return run(k, dgp.T, g); }, dgp.kind));
}

}  // namespace cointkit
