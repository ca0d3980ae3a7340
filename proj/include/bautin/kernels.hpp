#pragma once

// Batched evaluation of the coupled-burster field and Euler-Maruyama update
// over many independent replicas of the same network.
//
// Layout is component-major structure-of-arrays: component c of replica l
// lives at data[c * lanes + l], with components ordered (x_0, y_0, u_0, x_1,
// ...). With lanes == 1 this is exactly the interleaved NetworkState layout,
// which is how the single-network field evaluation reuses the scalar kernel.
//
// Every variant performs the same IEEE operations in the same order (no FMA
// contraction), so results are bit-identical across variants.

#include <cstddef>
#include <string_view>

namespace bautin::kernels {

struct NetworkCoefficients {
  std::size_t n;
  double omega;
  double a;
  double eta;
  double b_re;
  double b_im;
  double c_re;
  double c_im;
  double kappa1;
  double kappa2;
  const double* connectivity;  // n x n, row-major
};

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// Best variant supported by this build and CPU. Setting the environment
/// variable BAUTIN_FORCE_SCALAR to a non-empty value forces the scalar path.
Isa detect_isa();
bool isa_available(Isa isa);

/// out = f(state) for `lanes` replicas.
using FieldFn = void (*)(const NetworkCoefficients& coeffs, const double* state, double* out,
                         std::size_t lanes);

/// state += dt * f(state); then the fast components receive
/// noise_scale * noise[c * lanes + l]. `scratch` holds 3n * lanes doubles.
/// `noise` may be null when noise_scale is zero.
using EulerStepFn = void (*)(const NetworkCoefficients& coeffs, double* state,
                             const double* noise, double noise_scale, double dt,
                             std::size_t lanes, double* scratch);

void field_scalar(const NetworkCoefficients& coeffs, const double* state, double* out,
                  std::size_t lanes);
void euler_step_scalar(const NetworkCoefficients& coeffs, double* state, const double* noise,
                       double noise_scale, double dt, std::size_t lanes, double* scratch);

#if defined(BAUTIN_HAVE_AVX2_KERNEL)
// Require lanes % 4 == 0.
void field_avx2(const NetworkCoefficients& coeffs, const double* state, double* out,
                std::size_t lanes);
void euler_step_avx2(const NetworkCoefficients& coeffs, double* state, const double* noise,
                     double noise_scale, double dt, std::size_t lanes, double* scratch);
#endif

/// Lane multiple the variant requires.
std::size_t lane_width(Isa isa);
FieldFn select_field(Isa isa);
EulerStepFn select_euler_step(Isa isa);

}  // namespace bautin::kernels
