#pragma once

// Floating-point inner loops with a scalar reference and SIMD variants.
//
// Every kernel has a portable scalar implementation that is the reference.
// Wider variants live in their own translation units, are compiled with the
// matching target flags, and are selected at runtime from the CPU features.
// Tests run each variant against the scalar reference on random inputs.

#include <cstddef>
#include <span>
#include <string_view>

namespace itm::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// Best ISA this CPU supports and the build contains. ITM_FORCE_SCALAR=1 in
/// the environment pins the scalar path.
Isa detect_isa();

/// Currently selected ISA (defaults to detect_isa()).
Isa active_isa();
void set_active_isa(Isa isa);
bool isa_available(Isa isa);

/// For k = 1..degree:
///   cos_sums[k-1] = sum_i coefs[i] * cos(2 pi k xs[i])
///   sin_sums[k-1] = sum_i coefs[i] * sin(2 pi k xs[i])
/// cos_sums and sin_sums must have room for `degree` values.
void trig_sums(std::span<const double> xs, std::span<const double> coefs, std::size_t degree,
               std::span<double> cos_sums, std::span<double> sin_sums);

/// Number of xs whose distance to the nearest centre is < eps. With
/// `circle` set the distance is taken on R/Z, otherwise on the line.
std::size_t count_near(std::span<const double> xs, std::span<const double> centres, double eps, bool circle);

namespace scalar {
void trig_sums(std::span<const double> xs, std::span<const double> coefs, std::size_t degree,
               std::span<double> cos_sums, std::span<double> sin_sums);
std::size_t count_near(std::span<const double> xs, std::span<const double> centres, double eps, bool circle);
}  // namespace scalar

#if defined(ITM_HAVE_AVX2)
namespace avx2 {
void trig_sums(std::span<const double> xs, std::span<const double> coefs, std::size_t degree,
               std::span<double> cos_sums, std::span<double> sin_sums);
std::size_t count_near(std::span<const double> xs, std::span<const double> centres, double eps, bool circle);
}  // namespace avx2
#endif

}  // namespace itm::kernels
