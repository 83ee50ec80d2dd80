#include "arcflow/kernels/rowops.hpp"

#include <cstdlib>
#include <stdexcept>

namespace arcflow::kernels {

namespace scalar {

void eliminate_row(double* y, const double* x, double f, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] - f * x[i];
}

void divide_row(double* y, double d, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] / d;
}

} // namespace scalar

#ifdef ARCFLOW_HAVE_AVX2
namespace avx2 {
void eliminate_row(double* y, const double* x, double f, std::size_t n);
void divide_row(double* y, double d, std::size_t n);
} // namespace avx2
#endif

#ifdef ARCFLOW_HAVE_NEON
namespace neon {
void eliminate_row(double* y, const double* x, double f, std::size_t n);
void divide_row(double* y, double d, std::size_t n);
} // namespace neon
#endif

bool variant_supported(Variant v) {
    switch (v) {
    case Variant::Scalar:
        return true;
    case Variant::Avx2:
#ifdef ARCFLOW_HAVE_AVX2
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Variant::Neon:
#ifdef ARCFLOW_HAVE_NEON
        return true; // baseline on aarch64
#else
        return false;
#endif
    }
    return false;
}

std::string variant_name(Variant v) {
    switch (v) {
    case Variant::Scalar:
        return "scalar";
    case Variant::Avx2:
        return "avx2";
    case Variant::Neon:
        return "neon";
    }
    return "?";
}

namespace {

Variant pick_default() {
    if (const char* env = std::getenv("ARCFLOW_KERNEL")) {
        std::string want = env;
        for (Variant v : {Variant::Scalar, Variant::Avx2, Variant::Neon}) {
            if (variant_name(v) == want) {
                if (!variant_supported(v))
                    throw std::runtime_error("ARCFLOW_KERNEL=" + want + " not supported on this host");
                return v;
            }
        }
        throw std::runtime_error("unknown ARCFLOW_KERNEL value: " + want);
    }
    if (variant_supported(Variant::Avx2)) return Variant::Avx2;
    if (variant_supported(Variant::Neon)) return Variant::Neon;
    return Variant::Scalar;
}

Variant& current() {
    static Variant v = pick_default();
    return v;
}

} // namespace

Variant active_variant() { return current(); }

void set_variant(Variant v) {
    if (!variant_supported(v))
        throw std::runtime_error("kernel variant " + variant_name(v) + " not supported on this host");
    current() = v;
}

void eliminate_row(double* y, const double* x, double f, std::size_t n) {
    switch (current()) {
#ifdef ARCFLOW_HAVE_AVX2
    case Variant::Avx2:
        avx2::eliminate_row(y, x, f, n);
        return;
#endif
#ifdef ARCFLOW_HAVE_NEON
    case Variant::Neon:
        neon::eliminate_row(y, x, f, n);
        return;
#endif
    default:
        scalar::eliminate_row(y, x, f, n);
        return;
    }
}

void divide_row(double* y, double d, std::size_t n) {
    switch (current()) {
#ifdef ARCFLOW_HAVE_AVX2
    case Variant::Avx2:
        avx2::divide_row(y, d, n);
        return;
#endif
#ifdef ARCFLOW_HAVE_NEON
    case Variant::Neon:
        neon::divide_row(y, d, n);
        return;
#endif
    default:
        scalar::divide_row(y, d, n);
        return;
    }
}

} // namespace arcflow::kernels
