#pragma once

// Complex double inner-loop kernels with a scalar reference implementation
// and SIMD variants chosen once per process from the host CPU.
//
// Conventions: dot(x, y) = sum_i x_i * conj(y_i), i.e. linear in the first
// argument, matching <Tx, x> for quadratic forms.
//
// The variant can be pinned with the environment variable MINMOD_ISA
// ("scalar" or "avx2") or with force_isa() from tests.

#include <complex>
#include <span>
#include <string_view>

namespace minmod::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();

// Switches the dispatch target. Throws DomainError when the variant is not
// compiled in or not supported by the host.
void force_isa(Isa isa);

cplx dot(std::span<const cplx> x, std::span<const cplx> y);
double norm_sq(std::span<const cplx> x);
// y += a * x
void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y);
// y = A x for a column-major rows x cols block with leading dimension rows.
void gemv(std::span<const cplx> a, std::size_t rows, std::size_t cols,
          std::span<const cplx> x, std::span<cplx> y);

// Direct entry points for equivalence tests.
namespace scalar {
cplx dot(const cplx* x, const cplx* y, std::size_t n);
double norm_sq(const cplx* x, std::size_t n);
void axpy(cplx a, const cplx* x, cplx* y, std::size_t n);
}  // namespace scalar

#if defined(MINMOD_HAVE_AVX2)
namespace avx2 {
cplx dot(const cplx* x, const cplx* y, std::size_t n);
double norm_sq(const cplx* x, std::size_t n);
void axpy(cplx a, const cplx* x, cplx* y, std::size_t n);
}  // namespace avx2
#endif

}  // namespace minmod::kernels
