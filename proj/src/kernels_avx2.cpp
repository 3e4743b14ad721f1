// AVX2 kernel variants. This translation unit is compiled with -mavx2 -mfma;
// callers must check avx2_supported() before routing here.
#if defined(PINCTL_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace pinctl::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

} // namespace

void lap_spmv(std::size_t n, const std::int32_t* row_ptr, const std::int32_t* cols,
              const double* diag, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t begin = row_ptr[i];
        const std::int32_t end = row_ptr[i + 1];
        std::int32_t k = begin;
        __m256d vacc = _mm256_setzero_pd();
        for (; k + 4 <= end; k += 4) {
            __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(cols + k));
            vacc = _mm256_add_pd(vacc, _mm256_i32gather_pd(x, idx, 8));
        }
        double acc = hsum(vacc);
        for (; k < end; ++k) acc += x[cols[k]];
        y[i] = diag[i] * x[i] - acc;
    }
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void aypx(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, vy, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] = x[i] + a * y[i];
}

void add_scaled(double* w, const double* x, double a, const double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_fmadd_pd(va, _mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(w + i, v);
    }
    for (; i < n; ++i) w[i] = x[i] + a * y[i];
}

void rk4_combine(double* out, const double* x, double h, const double* k1,
                 const double* k2, const double* k3, const double* k4, std::size_t n) {
    const double w = h / 6.0;
    const __m256d vw = _mm256_set1_pd(w);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d sum = _mm256_loadu_pd(k1 + i);
        sum = _mm256_fmadd_pd(two, _mm256_loadu_pd(k2 + i), sum);
        sum = _mm256_fmadd_pd(two, _mm256_loadu_pd(k3 + i), sum);
        sum = _mm256_add_pd(sum, _mm256_loadu_pd(k4 + i));
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(vw, sum, _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) {
        out[i] = x[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

double max_norm3(const double* x, const double* y, const double* z, std::size_t n) {
    __m256d vbest = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d vz = _mm256_loadu_pd(z + i);
        __m256d s = _mm256_mul_pd(vx, vx);
        s = _mm256_fmadd_pd(vy, vy, s);
        s = _mm256_fmadd_pd(vz, vz, s);
        vbest = _mm256_max_pd(vbest, s);
    }
    double best = hmax(vbest);
    for (; i < n; ++i) {
        const double s = x[i] * x[i] + y[i] * y[i] + z[i] * z[i];
        if (s > best) best = s;
    }
    return std::sqrt(best);
}

} // namespace pinctl::kernels::avx2

#endif // PINCTL_HAVE_AVX2
