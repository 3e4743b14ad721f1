#pragma once

#include "pinctl/graph.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace pinctl {

/// Smallest eigenpair of a grounded view, with a residual certificate.
/// u is unit-norm over the view's local indices, signed so that sum(u) >= 0
/// (first nonzero component positive when the sum vanishes).
struct SpectralPair {
    double lambda1 = 0.0;
    std::vector<double> u;
    double residual = 0.0;
    int iterations = 0;
};

struct SpectralOptions {
    double tol = 1e-10;    // residual ||L_hat u - lambda u||
    int max_iter = 0;      // outer iterations; 0 means 10 * view size
    double shift = 1e-9;   // base diagonal shift of the inverted operator
    /// Optional warm start over the view's local indices (need not be unit).
    std::span<const double> warm = {};
};

/// Shift-inverted power iteration with conjugate-gradient inner solves against
/// the implicit view (O(M) per matvec). The zero eigenvalue of views with an
/// unpinned component that touches no pin is detected structurally, and the
/// component indicator is returned as the eigenvector.
/// Throws ConvergenceError (carrying the best iterate) past max_iter.
SpectralPair smallest_eigenpair(const GroundedView& view, const SpectralOptions& opts = {});

/// Full spectrum of a view, eigenvalues ascending. Dense solve, independent
/// of the iterative path; this is the test oracle. Dimension capped at 2000.
struct DenseSpectrum {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors; // column h is the eigenvector of values[h]
};

DenseSpectrum dense_spectrum_oracle(const GroundedView& view);

/// Smallest eigenvalue only, via the same dense path.
double dense_lambda1(const GroundedView& view);

} // namespace pinctl
