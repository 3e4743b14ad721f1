#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops, dispatched at runtime between a scalar reference
// implementation and an AVX2 variant. The scalar kernels define the semantics;
// the SIMD variants are equivalence-tested against them (accumulation order
// differs, so results agree to rounding, not bit-for-bit).
namespace pinctl::kernels {

enum class Backend { scalar, avx2 };

/// Backend currently routed to by the kernel entry points.
Backend active_backend();
const char* backend_name(Backend b);

/// True if this build and this CPU can run the AVX2 variants.
bool avx2_supported();

/// Forces a backend (throws pinctl::Error if unsupported). Intended for
/// equivalence tests and benchmarking; the default is the best supported one.
void set_backend(Backend b);

/// y = diag[i]*x[i] - sum_{k in [row_ptr[i], row_ptr[i+1])} x[cols[k]].
/// CSR form shared by the full Laplacian (diag = degrees) and any grounded
/// view (diag = full-graph degrees of the unpinned nodes).
void lap_spmv(std::size_t n, const std::int32_t* row_ptr, const std::int32_t* cols,
              const double* diag, const double* x, double* y);

double dot(const double* a, const double* b, std::size_t n);

/// y += a*x
void axpy(double a, const double* x, double* y, std::size_t n);

/// y = x + a*y
void aypx(double a, const double* x, double* y, std::size_t n);

/// w = x + a*y  (w may not alias x or y)
void add_scaled(double* w, const double* x, double a, const double* y, std::size_t n);

/// out = x + (h/6)*(k1 + 2*k2 + 2*k3 + k4)
void rk4_combine(double* out, const double* x, double h, const double* k1,
                 const double* k2, const double* k3, const double* k4, std::size_t n);

/// max_i sqrt(x[i]^2 + y[i]^2 + z[i]^2)
double max_norm3(const double* x, const double* y, const double* z, std::size_t n);

// Scalar reference implementations, always available (used directly by the
// equivalence tests).
namespace scalar {
void lap_spmv(std::size_t n, const std::int32_t* row_ptr, const std::int32_t* cols,
              const double* diag, const double* x, double* y);
double dot(const double* a, const double* b, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void aypx(double a, const double* x, double* y, std::size_t n);
void add_scaled(double* w, const double* x, double a, const double* y, std::size_t n);
void rk4_combine(double* out, const double* x, double h, const double* k1,
                 const double* k2, const double* k3, const double* k4, std::size_t n);
double max_norm3(const double* x, const double* y, const double* z, std::size_t n);
} // namespace scalar

} // namespace pinctl::kernels
