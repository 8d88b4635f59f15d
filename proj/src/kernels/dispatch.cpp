#include <atomic>
#include <cstdlib>
#include <cstring>

#include "itm/kernels.hpp"

namespace itm::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(ITM_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detect_isa()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

Isa detect_isa() {
  if (const char* force = std::getenv("ITM_FORCE_SCALAR"); force && std::strcmp(force, "0") != 0)
    return Isa::scalar;
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) { selected().store(isa_available(isa) ? isa : Isa::scalar, std::memory_order_relaxed); }

void trig_sums(std::span<const double> xs, std::span<const double> coefs, std::size_t degree,
               std::span<double> cos_sums, std::span<double> sin_sums) {
#if defined(ITM_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::trig_sums(xs, coefs, degree, cos_sums, sin_sums);
#endif
  scalar::trig_sums(xs, coefs, degree, cos_sums, sin_sums);
}

std::size_t count_near(std::span<const double> xs, std::span<const double> centres, double eps, bool circle) {
#if defined(ITM_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::count_near(xs, centres, eps, circle);
#endif
  return scalar::count_near(xs, centres, eps, circle);
}

}  // namespace itm::kernels
