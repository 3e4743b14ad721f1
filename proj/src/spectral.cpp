#include "pinctl/spectral.hpp"

#include "pinctl/errors.hpp"
#include "pinctl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pinctl {

namespace {

double nrm2(const std::vector<double>& v) {
    return std::sqrt(kernels::dot(v.data(), v.data(), v.size()));
}

void normalize(std::vector<double>& v) {
    const double n = nrm2(v);
    if (n > 0.0) {
        for (double& x : v) x /= n;
    }
}

void apply_sign_convention(std::vector<double>& u) {
    double sum = 0.0;
    for (double x : u) sum += x;
    if (sum < 0.0) {
        for (double& x : u) x = -x;
        return;
    }
    if (sum == 0.0) {
        for (double x : u) {
            if (x != 0.0) {
                if (x < 0.0) {
                    for (double& y : u) y = -y;
                }
                return;
            }
        }
    }
}

/// Locates an unpinned component with no pinned contact, scanning the view's
/// CSR directly: a local node has a pinned contact iff its full-graph degree
/// exceeds its in-view degree. Returns the indicator of the smallest-index
/// such component, or empty if all components touch a pin.
std::vector<double> untouched_component_indicator(const GroundedView& view) {
    const std::size_t n = view.size();
    const auto& row_ptr = view.row_ptr();
    const auto& cols = view.cols();
    const auto& diag = view.diag();

    std::vector<char> visited(n, 0);
    std::vector<std::int32_t> stack;
    std::vector<std::int32_t> members;
    for (std::size_t start = 0; start < n; ++start) {
        if (visited[start]) continue;
        bool touches = false;
        members.clear();
        stack.push_back(static_cast<std::int32_t>(start));
        visited[start] = 1;
        while (!stack.empty()) {
            const std::int32_t i = stack.back();
            stack.pop_back();
            members.push_back(i);
            const std::int32_t deg_in_view = row_ptr[i + 1] - row_ptr[i];
            if (diag[i] > static_cast<double>(deg_in_view)) touches = true;
            for (std::int32_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
                if (!visited[cols[k]]) {
                    visited[cols[k]] = 1;
                    stack.push_back(cols[k]);
                }
            }
        }
        if (!touches) {
            std::vector<double> u(n, 0.0);
            const double value = 1.0 / std::sqrt(static_cast<double>(members.size()));
            for (std::int32_t i : members) u[i] = value;
            return u;
        }
    }
    return {};
}

struct CgWorkspace {
    std::vector<double> r, z, p, q;
};

/// Jacobi-preconditioned CG for (L_hat + shift I) y = b, matrix-free.
/// Stops at relative residual rtol or max_it; bails out (returning the
/// current iterate) if the operator turns out indefinite for this shift.
void cg_solve(const GroundedView& view, double shift, const std::vector<double>& b,
              std::vector<double>& y, double rtol, int max_it, CgWorkspace& ws) {
    const std::size_t n = b.size();
    const auto& diag = view.diag();
    y.assign(n, 0.0);
    ws.r = b;
    ws.z.resize(n);
    ws.q.resize(n);
    // Jacobi entries clamped positive: an aggressive negative shift can push
    // diag + shift through zero on min-degree rows.
    auto precondition = [&](const std::vector<double>& r, std::vector<double>& z) {
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = r[i] / std::max(diag[i] + shift, 1e-12);
        }
    };
    precondition(ws.r, ws.z);
    ws.p = ws.z;
    double rz = kernels::dot(ws.r.data(), ws.z.data(), n);
    const double b_norm = nrm2(const_cast<std::vector<double>&>(b));
    const double stop = rtol * b_norm;

    for (int it = 0; it < max_it; ++it) {
        view.matvec(ws.p.data(), ws.q.data());
        if (shift != 0.0) kernels::axpy(shift, ws.p.data(), ws.q.data(), n);
        const double p_ap = kernels::dot(ws.p.data(), ws.q.data(), n);
        if (p_ap <= 0.0) return; // shift overshot; caller retries conservatively
        const double alpha = rz / p_ap;
        kernels::axpy(alpha, ws.p.data(), y.data(), n);
        kernels::axpy(-alpha, ws.q.data(), ws.r.data(), n);
        if (nrm2(ws.r) <= stop) return;
        precondition(ws.r, ws.z);
        const double rz_next = kernels::dot(ws.r.data(), ws.z.data(), n);
        kernels::aypx(rz_next / rz, ws.z.data(), ws.p.data(), n);
        rz = rz_next;
    }
}

} // namespace

SpectralPair smallest_eigenpair(const GroundedView& view, const SpectralOptions& opts) {
    const std::size_t n = view.size();
    if (n == 0) throw Error("smallest_eigenpair: empty view");
    if (opts.tol <= 0.0) throw Error("smallest_eigenpair: tol must be positive");

    // Structural lambda_1 = 0: exact, no iteration.
    if (auto indicator = untouched_component_indicator(view); !indicator.empty()) {
        SpectralPair pair;
        pair.lambda1 = 0.0;
        pair.u = std::move(indicator);
        pair.residual = 0.0;
        pair.iterations = 0;
        return pair;
    }

    const int max_iter = opts.max_iter > 0 ? opts.max_iter
                                           : std::max<int>(10 * static_cast<int>(n), 40);

    std::vector<double> x;
    if (opts.warm.size() == n) {
        x.assign(opts.warm.begin(), opts.warm.end());
        if (nrm2(x) < 1e-300) x.clear();
    }
    if (x.empty()) x.assign(n, 1.0);
    normalize(x);

    std::vector<double> t(n), y(n);
    CgWorkspace ws;

    auto rayleigh = [&](const std::vector<double>& v, double& lambda, double& res) {
        view.matvec(v.data(), t.data());
        lambda = kernels::dot(v.data(), t.data(), n);
        kernels::axpy(-lambda, v.data(), t.data(), n);
        res = nrm2(t);
    };

    double lambda = 0.0, res = 0.0;
    double best_lambda = std::numeric_limits<double>::max();
    double best_res = std::numeric_limits<double>::max();
    std::vector<double> best_u;
    int it = 0;

    for (it = 0; it < max_iter; ++it) {
        rayleigh(x, lambda, res);
        if (res < best_res) {
            best_res = res;
            best_lambda = lambda;
            best_u = x;
        }
        if (res <= opts.tol) break;

        // Shift-invert step. Starts from the conservative base shift; once the
        // direction has settled, the shift tracks the Rayleigh quotient from
        // below (kept 5 residuals clear of it so the operator stays definite).
        double shift = opts.shift;
        if (it >= 2 && res < 0.05 * std::max(lambda, opts.shift)) {
            shift = -(lambda - 5.0 * res) + opts.shift;
        }
        const double rtol = std::clamp(0.05 * res / std::max(lambda, opts.shift), 1e-12, 1e-2);
        const int cg_cap = static_cast<int>(std::min<std::size_t>(4 * n + 80, 600));
        cg_solve(view, shift, x, y, rtol, cg_cap, ws);
        const double y_norm = nrm2(y);
        if (y_norm < 1e-300) continue; // solve failed; retry with base shift next round
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / y_norm;
    }

    if (res > opts.tol) {
        // The last CG update has not been evaluated yet.
        rayleigh(x, lambda, res);
        if (res < best_res) {
            best_res = res;
            best_lambda = lambda;
            best_u = x;
        }
    }

    if (res > opts.tol) {
        apply_sign_convention(best_u);
        throw ConvergenceError("smallest_eigenpair: no convergence within max_iter",
                               best_lambda, best_res, std::move(best_u), it);
    }

    SpectralPair pair;
    pair.lambda1 = lambda;
    pair.u = std::move(x);
    pair.residual = res;
    pair.iterations = it + 1;
    apply_sign_convention(pair.u);
    return pair;
}

namespace {

Eigen::MatrixXd dense_matrix(const GroundedView& view) {
    const std::size_t n = view.size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    const auto& row_ptr = view.row_ptr();
    const auto& cols = view.cols();
    const auto& diag = view.diag();
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = diag[i];
        for (std::int32_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            m(i, cols[k]) = -1.0;
        }
    }
    return m;
}

constexpr std::size_t kDenseCap = 2000;

} // namespace

DenseSpectrum dense_spectrum_oracle(const GroundedView& view) {
    if (view.size() > kDenseCap) {
        throw Error("dense_spectrum_oracle: view dimension exceeds cap of 2000");
    }
    if (view.size() == 0) throw Error("dense_spectrum_oracle: empty view");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_matrix(view));
    if (solver.info() != Eigen::Success) throw Error("dense eigensolve failed");
    DenseSpectrum s;
    s.values = solver.eigenvalues();
    s.vectors = solver.eigenvectors();
    for (Eigen::Index c = 0; c < s.vectors.cols(); ++c) {
        const double sum = s.vectors.col(c).sum();
        if (sum < 0.0) {
            s.vectors.col(c) = -s.vectors.col(c);
        } else if (sum == 0.0) {
            for (Eigen::Index r = 0; r < s.vectors.rows(); ++r) {
                const double v = s.vectors(r, c);
                if (v != 0.0) {
                    if (v < 0.0) s.vectors.col(c) = -s.vectors.col(c);
                    break;
                }
            }
        }
    }
    return s;
}

double dense_lambda1(const GroundedView& view) {
    if (view.size() > kDenseCap) {
        throw Error("dense_lambda1: view dimension exceeds cap of 2000");
    }
    if (view.size() == 0) throw Error("dense_lambda1: empty view");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_matrix(view),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("dense eigensolve failed");
    return solver.eigenvalues()(0);
}

} // namespace pinctl
