#include <cstdlib>

#include "bautin/errors.hpp"
#include "bautin/kernels.hpp"

namespace bautin::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(BAUTIN_HAVE_AVX2_KERNEL) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa detect_isa() {
  const char* force = std::getenv("BAUTIN_FORCE_SCALAR");
  if (force != nullptr && *force != '\0') return Isa::scalar;
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::size_t lane_width(Isa isa) { return isa == Isa::avx2 ? 4 : 1; }

FieldFn select_field(Isa isa) {
  if (!isa_available(isa)) throw DomainError("kernel variant not available on this CPU");
#if defined(BAUTIN_HAVE_AVX2_KERNEL)
  if (isa == Isa::avx2) return &field_avx2;
#endif
  return &field_scalar;
}

EulerStepFn select_euler_step(Isa isa) {
  if (!isa_available(isa)) throw DomainError("kernel variant not available on this CPU");
#if defined(BAUTIN_HAVE_AVX2_KERNEL)
  if (isa == Isa::avx2) return &euler_step_avx2;
#endif
  return &euler_step_scalar;
}

}  // namespace bautin::kernels
