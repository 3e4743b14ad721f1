#include "pinctl/kernels.hpp"

#include "pinctl/errors.hpp"

#include <cmath>

namespace pinctl::kernels {

namespace scalar {

void lap_spmv(std::size_t n, const std::int32_t* row_ptr, const std::int32_t* cols,
              const double* diag, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::int32_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            acc += x[cols[k]];
        }
        y[i] = diag[i] * x[i] - acc;
    }
}

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void aypx(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + a * y[i];
}

void add_scaled(double* w, const double* x, double a, const double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) w[i] = x[i] + a * y[i];
}

void rk4_combine(double* out, const double* x, double h, const double* k1,
                 const double* k2, const double* k3, const double* k4, std::size_t n) {
    const double w = h / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = x[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

double max_norm3(const double* x, const double* y, const double* z, std::size_t n) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = x[i] * x[i] + y[i] * y[i] + z[i] * z[i];
        if (s > best) best = s;
    }
    return std::sqrt(best);
}

} // namespace scalar

#if defined(PINCTL_HAVE_AVX2)
namespace avx2 {
void lap_spmv(std::size_t n, const std::int32_t* row_ptr, const std::int32_t* cols,
              const double* diag, const double* x, double* y);
double dot(const double* a, const double* b, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void aypx(double a, const double* x, double* y, std::size_t n);
void add_scaled(double* w, const double* x, double a, const double* y, std::size_t n);
void rk4_combine(double* out, const double* x, double h, const double* k1,
                 const double* k2, const double* k3, const double* k4, std::size_t n);
double max_norm3(const double* x, const double* y, const double* z, std::size_t n);
} // namespace avx2
#endif

namespace {

struct KernelTable {
    void (*lap_spmv)(std::size_t, const std::int32_t*, const std::int32_t*,
                     const double*, const double*, double*);
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*aypx)(double, const double*, double*, std::size_t);
    void (*add_scaled)(double*, const double*, double, const double*, std::size_t);
    void (*rk4_combine)(double*, const double*, double, const double*, const double*,
                        const double*, const double*, std::size_t);
    double (*max_norm3)(const double*, const double*, const double*, std::size_t);
};

constexpr KernelTable kScalarTable = {
    scalar::lap_spmv, scalar::dot,        scalar::axpy,      scalar::aypx,
    scalar::add_scaled, scalar::rk4_combine, scalar::max_norm3,
};

#if defined(PINCTL_HAVE_AVX2)
constexpr KernelTable kAvx2Table = {
    avx2::lap_spmv, avx2::dot,        avx2::axpy,      avx2::aypx,
    avx2::add_scaled, avx2::rk4_combine, avx2::max_norm3,
};
#endif

Backend g_backend = [] {
#if defined(PINCTL_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return Backend::avx2;
    }
#endif
    return Backend::scalar;
}();

const KernelTable* g_table = [] {
#if defined(PINCTL_HAVE_AVX2)
    if (g_backend == Backend::avx2) return &kAvx2Table;
#endif
    return &kScalarTable;
}();

} // namespace

Backend active_backend() { return g_backend; }

const char* backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

bool avx2_supported() {
#if defined(PINCTL_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

void set_backend(Backend b) {
    if (b == Backend::avx2) {
#if defined(PINCTL_HAVE_AVX2)
        if (!avx2_supported()) throw Error("avx2 backend not supported on this CPU");
        g_backend = Backend::avx2;
        g_table = &kAvx2Table;
        return;
#else
        throw Error("avx2 backend not compiled in");
#endif
    }
    g_backend = Backend::scalar;
    g_table = &kScalarTable;
}

void lap_spmv(std::size_t n, const std::int32_t* row_ptr, const std::int32_t* cols,
              const double* diag, const double* x, double* y) {
    g_table->lap_spmv(n, row_ptr, cols, diag, x, y);
}

double dot(const double* a, const double* b, std::size_t n) {
    return g_table->dot(a, b, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    g_table->axpy(a, x, y, n);
}

void aypx(double a, const double* x, double* y, std::size_t n) {
    g_table->aypx(a, x, y, n);
}

void add_scaled(double* w, const double* x, double a, const double* y, std::size_t n) {
    g_table->add_scaled(w, x, a, y, n);
}

void rk4_combine(double* out, const double* x, double h, const double* k1,
                 const double* k2, const double* k3, const double* k4, std::size_t n) {
    g_table->rk4_combine(out, x, h, k1, k2, k3, k4, n);
}

double max_norm3(const double* x, const double* y, const double* z, std::size_t n) {
    return g_table->max_norm3(x, y, z, n);
}

} // namespace pinctl::kernels
