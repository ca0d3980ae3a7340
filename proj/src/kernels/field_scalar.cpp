#include "bautin/kernels.hpp"

namespace bautin::kernels {

void field_scalar(const NetworkCoefficients& k, const double* state, double* out,
                  std::size_t lanes) {
  const std::size_t n = k.n;
  for (std::size_t j = 0; j < n; ++j) {
    const double* xs = state + (3 * j) * lanes;
    const double* ys = state + (3 * j + 1) * lanes;
    const double* us = state + (3 * j + 2) * lanes;
    double* dx = out + (3 * j) * lanes;
    double* dy = out + (3 * j + 1) * lanes;
    double* du = out + (3 * j + 2) * lanes;
    const double* row = k.connectivity + j * n;
    for (std::size_t l = 0; l < lanes; ++l) {
      double sx = 0.0;
      double sy = 0.0;
      for (std::size_t m = 0; m < n; ++m) {
        sx = sx + row[m] * state[(3 * m) * lanes + l];
        sy = sy + row[m] * state[(3 * m + 1) * lanes + l];
      }
      const double x = xs[l];
      const double y = ys[l];
      const double u = us[l];
      const double r2 = x * x + y * y;
      const double r4 = r2 * r2;

      double fx = u * x - k.omega * y;
      fx = fx + (k.b_re * x - k.b_im * y) * r2;
      fx = fx + (k.c_re * x - k.c_im * y) * r4;
      fx = fx + (k.kappa1 * sx - k.kappa2 * sy);

      double fy = u * y + k.omega * x;
      fy = fy + (k.b_re * y + k.b_im * x) * r2;
      fy = fy + (k.c_re * y + k.c_im * x) * r4;
      fy = fy + (k.kappa1 * sy + k.kappa2 * sx);

      dx[l] = fx;
      dy[l] = fy;
      du[l] = k.eta * (k.a - r2);
    }
  }
}

void euler_step_scalar(const NetworkCoefficients& k, double* state, const double* noise,
                       double noise_scale, double dt, std::size_t lanes, double* scratch) {
  field_scalar(k, state, scratch, lanes);
  const std::size_t dim = 3 * k.n;
  for (std::size_t c = 0; c < dim; ++c) {
    double* s = state + c * lanes;
    const double* f = scratch + c * lanes;
    const bool fast = (c % 3) != 2;
    for (std::size_t l = 0; l < lanes; ++l) {
      s[l] = s[l] + dt * f[l];
    }
    if (fast && noise_scale != 0.0) {
      const double* xi = noise + c * lanes;
      for (std::size_t l = 0; l < lanes; ++l) {
        s[l] = s[l] + noise_scale * xi[l];
      }
    }
  }
}

}  // namespace bautin::kernels
