// Built with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "minmod/kernels.hpp"

namespace minmod::kernels::avx2 {

namespace {

// Horizontal sum of the even lanes and of the odd lanes of a 4 x f64
// register laid out as [re0, im0, re1, im1].
inline void reduce_pairs(__m256d v, double& even, double& odd) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  even = _mm_cvtsd_f64(s);
  odd = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

}  // namespace

cplx dot(const cplx* x, const cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  // acc_re lanes hold xr*yr and xi*yi; acc_im lanes hold xr*yi and xi*yr.
  __m256d acc_re0 = _mm256_setzero_pd(), acc_re1 = _mm256_setzero_pd();
  __m256d acc_im0 = _mm256_setzero_pd(), acc_im1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xa = _mm256_loadu_pd(xp + 2 * i);
    const __m256d ya = _mm256_loadu_pd(yp + 2 * i);
    const __m256d xb = _mm256_loadu_pd(xp + 2 * i + 4);
    const __m256d yb = _mm256_loadu_pd(yp + 2 * i + 4);
    acc_re0 = _mm256_fmadd_pd(xa, ya, acc_re0);
    acc_re1 = _mm256_fmadd_pd(xb, yb, acc_re1);
    acc_im0 = _mm256_fmadd_pd(xa, _mm256_permute_pd(ya, 0b0101), acc_im0);
    acc_im1 = _mm256_fmadd_pd(xb, _mm256_permute_pd(yb, 0b0101), acc_im1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d xa = _mm256_loadu_pd(xp + 2 * i);
    const __m256d ya = _mm256_loadu_pd(yp + 2 * i);
    acc_re0 = _mm256_fmadd_pd(xa, ya, acc_re0);
    acc_im0 = _mm256_fmadd_pd(xa, _mm256_permute_pd(ya, 0b0101), acc_im0);
  }
  double rr, ii, ri, ir;
  reduce_pairs(_mm256_add_pd(acc_re0, acc_re1), rr, ii);
  reduce_pairs(_mm256_add_pd(acc_im0, acc_im1), ri, ir);
  double re = rr + ii;
  double im = ir - ri;
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].imag() * y[i].real() - x[i].real() * y[i].imag();
  }
  return {re, im};
}

double norm_sq(const cplx* x, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(xp + 2 * i);
    const __m256d b = _mm256_loadu_pd(xp + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(xp + 2 * i);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
  }
  double even, odd;
  reduce_pairs(_mm256_add_pd(acc0, acc1), even, odd);
  double s = even + odd;
  for (; i < n; ++i) s += std::norm(x[i]);
  return s;
}

void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);  // [xi, xr, ...]
    // [ar*xr - ai*xi, ar*xi + ai*xr]
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yp + 2 * i), prod));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = cplx(y[i].real() + a.real() * xr - a.imag() * xi,
                y[i].imag() + a.real() * xi + a.imag() * xr);
  }
}

}  // namespace minmod::kernels::avx2
