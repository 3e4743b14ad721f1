#pragma once

#include "pinctl/graph.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pinctl {

struct ChenParams {
    double p1 = 35.0;
    double p2 = 3.0;
    double p3 = 28.0;
};

/// The `standard` variant is the Chen system as published; `paper_literal`
/// duplicates the x2 term in the second component. Both share the origin as
/// an (unstable) equilibrium.
enum class ChenVariant { Standard, PaperLiteral };

const char* chen_variant_name(ChenVariant v);
ChenVariant chen_variant_from_name(const std::string& name);

std::array<double, 3> chen_rhs(const std::array<double, 3>& x, const ChenParams& p,
                               ChenVariant variant);

struct DynamicsConfig {
    double c = 18.0;       // coupling strength
    double gain = 30.0;    // uniform control gain on active pinned nodes
    ChenParams chen;
    ChenVariant variant = ChenVariant::Standard;
    double dt = 5e-4;      // fixed RK4 step
    double t_max = 5.0;    // horizon
    double eps = 1e-3;     // sync threshold on the max node error
    double init_box = 1.0; // initial states uniform in [-init_box, init_box]^3
    std::uint64_t seed = 0;
    bool keep_samples = false; // retain a downsampled error series for plotting

    void validate() const;
};

/// Per-pinned-node failure flags, aligned with PinSet.members (1 = failed,
/// control input disabled).
struct FailureMask {
    std::vector<std::uint8_t> beta;

    std::size_t failed_count() const;
    static FailureMask none(std::size_t pins) { return FailureMask{std::vector<std::uint8_t>(pins, 0)}; }
};

struct TrajectorySummary {
    /// First time after which the max node error stays below eps through
    /// t_max; empty = timeout (never settles).
    std::optional<double> sync_time;
    double final_error = 0.0;
    /// (t, max node error) samples when requested.
    std::vector<std::pair<double, double>> samples;
};

/// Integrates all N oscillators with fixed-step RK4 under diffusive coupling
/// and pinning feedback toward the origin; feedback acts only on pinned nodes
/// whose mask bit is clear. Throws DivergenceError on numerical blow-up.
TrajectorySummary simulate(const Graph& g, const PinSet& pins, const DynamicsConfig& cfg,
                           const FailureMask& mask);

/// Linear-consensus decay: integrates xi' = -c L_hat xi from xi(0) = u_init
/// (pinned states clamped to the origin) and least-squares fits the slope of
/// log ||xi||^2. The fit window is three e-foldings of the mode implied by
/// u_init's Rayleigh quotient. For an eigenvector of lambda_h the fitted rate
/// is 2 c lambda_h. Throws if the view has a structurally zero lambda_1.
double measure_decay_rate(const Graph& g, const PinSet& pins, double c,
                          const std::vector<double>& u_init);

} // namespace pinctl
