#pragma once

#include <cstddef>
#include <string>

// Dense row kernels for the simplex tableau. Every variant performs the same
// per-element IEEE operations (mul+sub, div; no FMA), so results are
// bit-identical across scalar, AVX2 and NEON paths and pivot sequences do
// not depend on the host CPU.
namespace arcflow::kernels {

enum class Variant { Scalar, Avx2, Neon };

// Selected at first use: best supported variant, overridable via the
// ARCFLOW_KERNEL environment variable ("scalar", "avx2", "neon").
Variant active_variant();
std::string variant_name(Variant v);
// Forces a variant; throws std::runtime_error if unsupported on this host.
void set_variant(Variant v);
bool variant_supported(Variant v);

// y[i] -= f * x[i]
void eliminate_row(double* y, const double* x, double f, std::size_t n);
// y[i] /= d
void divide_row(double* y, double d, std::size_t n);

// reference implementations, always available (equivalence tests compare
// the dispatched variants against these)
namespace scalar {
void eliminate_row(double* y, const double* x, double f, std::size_t n);
void divide_row(double* y, double d, std::size_t n);
} // namespace scalar

} // namespace arcflow::kernels
