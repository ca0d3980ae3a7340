// AVX2 variant of the batched network kernels, four replicas per register.
// Mirrors field_scalar.cpp operation for operation; mul and add are kept
// separate so the results match the scalar path bit for bit.

#include <immintrin.h>

#include "bautin/kernels.hpp"

namespace bautin::kernels {

void field_avx2(const NetworkCoefficients& k, const double* state, double* out,
                std::size_t lanes) {
  const std::size_t n = k.n;
  const __m256d omega = _mm256_set1_pd(k.omega);
  const __m256d b_re = _mm256_set1_pd(k.b_re);
  const __m256d b_im = _mm256_set1_pd(k.b_im);
  const __m256d c_re = _mm256_set1_pd(k.c_re);
  const __m256d c_im = _mm256_set1_pd(k.c_im);
  const __m256d k1 = _mm256_set1_pd(k.kappa1);
  const __m256d k2 = _mm256_set1_pd(k.kappa2);
  const __m256d eta = _mm256_set1_pd(k.eta);
  const __m256d a = _mm256_set1_pd(k.a);

  for (std::size_t j = 0; j < n; ++j) {
    const double* xs = state + (3 * j) * lanes;
    const double* ys = state + (3 * j + 1) * lanes;
    const double* us = state + (3 * j + 2) * lanes;
    double* dx = out + (3 * j) * lanes;
    double* dy = out + (3 * j + 1) * lanes;
    double* du = out + (3 * j + 2) * lanes;
    const double* row = k.connectivity + j * n;
    for (std::size_t l = 0; l < lanes; l += 4) {
      __m256d sx = _mm256_setzero_pd();
      __m256d sy = _mm256_setzero_pd();
      for (std::size_t m = 0; m < n; ++m) {
        const __m256d c = _mm256_set1_pd(row[m]);
        sx = _mm256_add_pd(sx, _mm256_mul_pd(c, _mm256_loadu_pd(state + (3 * m) * lanes + l)));
        sy = _mm256_add_pd(sy,
                           _mm256_mul_pd(c, _mm256_loadu_pd(state + (3 * m + 1) * lanes + l)));
      }
      const __m256d x = _mm256_loadu_pd(xs + l);
      const __m256d y = _mm256_loadu_pd(ys + l);
      const __m256d u = _mm256_loadu_pd(us + l);
      const __m256d r2 = _mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y));
      const __m256d r4 = _mm256_mul_pd(r2, r2);

      __m256d fx = _mm256_sub_pd(_mm256_mul_pd(u, x), _mm256_mul_pd(omega, y));
      fx = _mm256_add_pd(
          fx, _mm256_mul_pd(_mm256_sub_pd(_mm256_mul_pd(b_re, x), _mm256_mul_pd(b_im, y)), r2));
      fx = _mm256_add_pd(
          fx, _mm256_mul_pd(_mm256_sub_pd(_mm256_mul_pd(c_re, x), _mm256_mul_pd(c_im, y)), r4));
      fx = _mm256_add_pd(fx, _mm256_sub_pd(_mm256_mul_pd(k1, sx), _mm256_mul_pd(k2, sy)));

      __m256d fy = _mm256_add_pd(_mm256_mul_pd(u, y), _mm256_mul_pd(omega, x));
      fy = _mm256_add_pd(
          fy, _mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(b_re, y), _mm256_mul_pd(b_im, x)), r2));
      fy = _mm256_add_pd(
          fy, _mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(c_re, y), _mm256_mul_pd(c_im, x)), r4));
      fy = _mm256_add_pd(fy, _mm256_add_pd(_mm256_mul_pd(k1, sy), _mm256_mul_pd(k2, sx)));

      _mm256_storeu_pd(dx + l, fx);
      _mm256_storeu_pd(dy + l, fy);
      _mm256_storeu_pd(du + l, _mm256_mul_pd(eta, _mm256_sub_pd(a, r2)));
    }
  }
}

void euler_step_avx2(const NetworkCoefficients& k, double* state, const double* noise,
                     double noise_scale, double dt, std::size_t lanes, double* scratch) {
  field_avx2(k, state, scratch, lanes);
  const __m256d h = _mm256_set1_pd(dt);
  const __m256d scale = _mm256_set1_pd(noise_scale);
  const std::size_t dim = 3 * k.n;
  for (std::size_t c = 0; c < dim; ++c) {
    double* s = state + c * lanes;
    const double* f = scratch + c * lanes;
    const bool fast = (c % 3) != 2;
    for (std::size_t l = 0; l < lanes; l += 4) {
      const __m256d v = _mm256_add_pd(_mm256_loadu_pd(s + l),
                                      _mm256_mul_pd(h, _mm256_loadu_pd(f + l)));
      _mm256_storeu_pd(s + l, v);
    }
    if (fast && noise_scale != 0.0) {
      const double* xi = noise + c * lanes;
      for (std::size_t l = 0; l < lanes; l += 4) {
        const __m256d v = _mm256_add_pd(_mm256_loadu_pd(s + l),
                                        _mm256_mul_pd(scale, _mm256_loadu_pd(xi + l)));
        _mm256_storeu_pd(s + l, v);
      }
    }
  }
}

}  // namespace bautin::kernels
