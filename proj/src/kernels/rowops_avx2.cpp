// AVX2 row kernels. Compiled with -mavx2 and -ffp-contract=off; uses
// separate mul and sub (no FMA) so every lane matches the scalar reference
// bit for bit.
#include <cstddef>
#include <immintrin.h>

namespace arcflow::kernels::avx2 {

void eliminate_row(double* y, const double* x, double f, std::size_t n) {
    const __m256d fv = _mm256_set1_pd(f);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        __m256d xv = _mm256_loadu_pd(x + i);
        yv = _mm256_sub_pd(yv, _mm256_mul_pd(fv, xv));
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) y[i] = y[i] - f * x[i];
}

void divide_row(double* y, double d, std::size_t n) {
    const __m256d dv = _mm256_set1_pd(d);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_div_pd(yv, dv));
    }
    for (; i < n; ++i) y[i] = y[i] / d;
}

} // namespace arcflow::kernels::avx2
