#include "pinctl/dynamics.hpp"

#include "pinctl/errors.hpp"
#include "pinctl/kernels.hpp"
#include "pinctl/rng.hpp"
#include "pinctl/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace pinctl {

const char* chen_variant_name(ChenVariant v) {
    return v == ChenVariant::Standard ? "standard" : "paper_literal";
}

ChenVariant chen_variant_from_name(const std::string& name) {
    if (name == "standard") return ChenVariant::Standard;
    if (name == "paper_literal") return ChenVariant::PaperLiteral;
    throw Error("unknown chen variant: " + name);
}

std::array<double, 3> chen_rhs(const std::array<double, 3>& x, const ChenParams& p,
                               ChenVariant variant) {
    const double second = variant == ChenVariant::Standard
                              ? (p.p3 - p.p1) * x[0] - x[0] * x[2] + p.p3 * x[1]
                              : (p.p3 - p.p2) * x[1] - x[0] * x[2] + p.p3 * x[1];
    return {p.p1 * (x[1] - x[0]), second, x[0] * x[1] - p.p2 * x[2]};
}

void DynamicsConfig::validate() const {
    if (c <= 0.0) throw Error("coupling strength c must be positive");
    if (gain <= 0.0) throw Error("control gain must be positive");
    if (dt <= 0.0) throw Error("dt must be positive");
    if (eps <= 0.0) throw Error("eps must be positive");
    if (t_max <= dt) throw Error("t_max must exceed dt");
}

std::size_t FailureMask::failed_count() const {
    std::size_t n = 0;
    for (auto b : beta) n += (b != 0);
    return n;
}

namespace {

struct State {
    std::vector<double> x, y, z;
    explicit State(std::size_t n) : x(n), y(n), z(n) {}
};

/// dx = F(x) - c L x - feed .* x, component arrays in SoA layout.
class PinnedChenField {
public:
    PinnedChenField(const Graph& g, const PinSet& pins, const DynamicsConfig& cfg,
                    const FailureMask& mask)
        : g_(g), cfg_(cfg), feed_(g.node_count(), 0.0),
          cx_(g.node_count()), cy_(g.node_count()), cz_(g.node_count()) {
        for (std::size_t i = 0; i < pins.members.size(); ++i) {
            const bool failed = i < mask.beta.size() && mask.beta[i] != 0;
            feed_[pins.members[i]] = failed ? 0.0 : cfg.c * cfg.gain;
        }
    }

    void operator()(const State& s, State& ds) {
        const std::size_t n = feed_.size();
        const auto& rp = g_.row_ptr();
        const auto& cols = g_.cols();
        const auto& deg = g_.degree_diag();
        kernels::lap_spmv(n, rp.data(), cols.data(), deg.data(), s.x.data(), cx_.data());
        kernels::lap_spmv(n, rp.data(), cols.data(), deg.data(), s.y.data(), cy_.data());
        kernels::lap_spmv(n, rp.data(), cols.data(), deg.data(), s.z.data(), cz_.data());

        const double p1 = cfg_.chen.p1, p2 = cfg_.chen.p2, p3 = cfg_.chen.p3;
        const double c = cfg_.c;
        if (cfg_.variant == ChenVariant::Standard) {
            for (std::size_t i = 0; i < n; ++i) {
                ds.x[i] = p1 * (s.y[i] - s.x[i]) - c * cx_[i] - feed_[i] * s.x[i];
                ds.y[i] = (p3 - p1) * s.x[i] - s.x[i] * s.z[i] + p3 * s.y[i] - c * cy_[i]
                          - feed_[i] * s.y[i];
                ds.z[i] = s.x[i] * s.y[i] - p2 * s.z[i] - c * cz_[i] - feed_[i] * s.z[i];
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                ds.x[i] = p1 * (s.y[i] - s.x[i]) - c * cx_[i] - feed_[i] * s.x[i];
                ds.y[i] = (p3 - p2) * s.y[i] - s.x[i] * s.z[i] + p3 * s.y[i] - c * cy_[i]
                          - feed_[i] * s.y[i];
                ds.z[i] = s.x[i] * s.y[i] - p2 * s.z[i] - c * cz_[i] - feed_[i] * s.z[i];
            }
        }
    }

private:
    const Graph& g_;
    const DynamicsConfig& cfg_;
    std::vector<double> feed_;
    std::vector<double> cx_, cy_, cz_;
};

double max_error(const State& s) {
    return kernels::max_norm3(s.x.data(), s.y.data(), s.z.data(), s.x.size());
}

} // namespace

TrajectorySummary simulate(const Graph& g, const PinSet& pins, const DynamicsConfig& cfg,
                           const FailureMask& mask) {
    cfg.validate();
    pins.validate(g);
    if (pins.empty()) throw Error("simulate: pin set is empty");
    if (!mask.beta.empty() && mask.beta.size() != pins.members.size()) {
        throw Error("simulate: failure mask length does not match pin set");
    }

    const std::size_t n = g.node_count();
    State s(n), k1(n), k2(n), k3(n), k4(n), tmp(n);
    RandomStream rng(derive_seed(cfg.seed, "dynamics.init"));
    for (std::size_t i = 0; i < n; ++i) s.x[i] = rng.uniform(-cfg.init_box, cfg.init_box);
    for (std::size_t i = 0; i < n; ++i) s.y[i] = rng.uniform(-cfg.init_box, cfg.init_box);
    for (std::size_t i = 0; i < n; ++i) s.z[i] = rng.uniform(-cfg.init_box, cfg.init_box);

    PinnedChenField field(g, pins, cfg, mask);
    const std::size_t steps = static_cast<std::size_t>(std::ceil(cfg.t_max / cfg.dt));
    std::vector<double> err;
    err.reserve(steps + 1);
    err.push_back(max_error(s));

    // Once the error is this many decades under threshold the run cannot
    // re-cross it (the linearized error dynamics are contracting well before
    // this point), so the tail is not integrated.
    const double settled = cfg.eps * 1e-6;

    auto stage = [&](const State& base, double h, const State& k, State& out) {
        kernels::add_scaled(out.x.data(), base.x.data(), h, k.x.data(), n);
        kernels::add_scaled(out.y.data(), base.y.data(), h, k.y.data(), n);
        kernels::add_scaled(out.z.data(), base.z.data(), h, k.z.data(), n);
    };

    std::size_t done = 0;
    for (std::size_t step = 0; step < steps; ++step) {
        field(s, k1);
        stage(s, cfg.dt / 2.0, k1, tmp);
        field(tmp, k2);
        stage(s, cfg.dt / 2.0, k2, tmp);
        field(tmp, k3);
        stage(s, cfg.dt, k3, tmp);
        field(tmp, k4);
        kernels::rk4_combine(s.x.data(), s.x.data(), cfg.dt, k1.x.data(), k2.x.data(),
                             k3.x.data(), k4.x.data(), n);
        kernels::rk4_combine(s.y.data(), s.y.data(), cfg.dt, k1.y.data(), k2.y.data(),
                             k3.y.data(), k4.y.data(), n);
        kernels::rk4_combine(s.z.data(), s.z.data(), cfg.dt, k1.z.data(), k2.z.data(),
                             k3.z.data(), k4.z.data(), n);
        const double e = max_error(s);
        err.push_back(e);
        done = step + 1;
        if (!std::isfinite(e) || e > 1e9) {
            throw DivergenceError("simulate: trajectory diverged at t = " +
                                      std::to_string(done * cfg.dt),
                                  done * cfg.dt);
        }
        if (e < settled) break;
    }

    TrajectorySummary out;
    out.final_error = err.back();

    // Sustained-threshold rule, evaluated retrospectively: sync time is the
    // time of the first sample after the last excursion above eps.
    std::size_t last_above = err.size(); // sentinel: none
    for (std::size_t i = err.size(); i-- > 0;) {
        if (err[i] >= cfg.eps) {
            last_above = i;
            break;
        }
    }
    if (last_above == err.size()) {
        out.sync_time = 0.0;
    } else if (last_above + 1 < err.size()) {
        out.sync_time = (last_above + 1) * cfg.dt;
    } else {
        out.sync_time.reset(); // still above eps at the end of the run
    }

    if (cfg.keep_samples) {
        const std::size_t stride = std::max<std::size_t>(1, err.size() / 512);
        for (std::size_t i = 0; i < err.size(); i += stride) {
            out.samples.emplace_back(i * cfg.dt, err[i]);
        }
        if ((err.size() - 1) % stride != 0) {
            out.samples.emplace_back(done * cfg.dt, err.back());
        }
    }
    return out;
}

double measure_decay_rate(const Graph& g, const PinSet& pins, double c,
                          const std::vector<double>& u_init) {
    if (c <= 0.0) throw Error("measure_decay_rate: c must be positive");
    GroundedView view(g, pins);
    if (u_init.size() != view.size()) {
        throw Error("measure_decay_rate: init vector has wrong dimension");
    }
    for (const auto& comp : unpinned_components(g, pins)) {
        if (!comp.touches_pinned) {
            throw Error("measure_decay_rate: lambda_1 is 0 (unpinned component "
                        "with no pinned contact)");
        }
    }

    const std::size_t n = view.size();
    std::vector<double> xi = u_init;
    const double norm0 = std::sqrt(kernels::dot(xi.data(), xi.data(), n));
    if (norm0 <= 0.0) throw Error("measure_decay_rate: zero init vector");
    for (double& v : xi) v /= norm0;

    // Fit window: three e-foldings of the mode selected by the init vector.
    std::vector<double> t(n), k1(n), k2(n), k3(n), k4(n), tmp(n);
    view.matvec(xi.data(), t.data());
    const double rho = kernels::dot(xi.data(), t.data(), n);
    if (rho <= 0.0) throw Error("measure_decay_rate: nonpositive Rayleigh quotient");
    const double window = 3.0 / (2.0 * c * rho);

    const double lam_max_bound = 2.0 * *std::max_element(view.diag().begin(), view.diag().end());
    const double dt = std::min(window / 400.0, 0.33 / (c * lam_max_bound));
    const std::size_t steps = static_cast<std::size_t>(std::ceil(window / dt));

    auto field = [&](const std::vector<double>& v, std::vector<double>& dv) {
        view.matvec(v.data(), dv.data());
        for (std::size_t i = 0; i < n; ++i) dv[i] = -c * dv[i];
    };

    std::vector<double> times, logw;
    times.reserve(steps + 1);
    logw.reserve(steps + 1);
    times.push_back(0.0);
    logw.push_back(std::log(kernels::dot(xi.data(), xi.data(), n)));

    for (std::size_t step = 0; step < steps; ++step) {
        field(xi, k1);
        kernels::add_scaled(tmp.data(), xi.data(), dt / 2.0, k1.data(), n);
        field(tmp, k2);
        kernels::add_scaled(tmp.data(), xi.data(), dt / 2.0, k2.data(), n);
        field(tmp, k3);
        kernels::add_scaled(tmp.data(), xi.data(), dt, k3.data(), n);
        field(tmp, k4);
        kernels::rk4_combine(xi.data(), xi.data(), dt, k1.data(), k2.data(), k3.data(),
                             k4.data(), n);
        times.push_back((step + 1) * dt);
        logw.push_back(std::log(kernels::dot(xi.data(), xi.data(), n)));
    }

    double t_mean = 0.0, w_mean = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        t_mean += times[i];
        w_mean += logw[i];
    }
    t_mean /= times.size();
    w_mean /= times.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        num += (times[i] - t_mean) * (logw[i] - w_mean);
        den += (times[i] - t_mean) * (times[i] - t_mean);
    }
    return -num / den;
}

} // namespace pinctl
