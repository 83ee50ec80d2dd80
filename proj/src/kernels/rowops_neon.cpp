// NEON row kernels for aarch64. Explicit mul then sub (no vmls/fused forms)
// keeps results bit-identical to the scalar reference; the TU is built with
// -ffp-contract=off for the tail loops.
#include <arm_neon.h>

#include <cstddef>

namespace arcflow::kernels::neon {

void eliminate_row(double* y, const double* x, double f, std::size_t n) {
    const float64x2_t fv = vdupq_n_f64(f);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t yv = vld1q_f64(y + i);
        float64x2_t xv = vld1q_f64(x + i);
        yv = vsubq_f64(yv, vmulq_f64(fv, xv));
        vst1q_f64(y + i, yv);
    }
    for (; i < n; ++i) y[i] = y[i] - f * x[i];
}

void divide_row(double* y, double d, std::size_t n) {
    const float64x2_t dv = vdupq_n_f64(d);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t yv = vld1q_f64(y + i);
        vst1q_f64(y + i, vdivq_f64(yv, dv));
    }
    for (; i < n; ++i) y[i] = y[i] / d;
}

} // namespace arcflow::kernels::neon
