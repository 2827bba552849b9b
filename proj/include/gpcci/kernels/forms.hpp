#pragma once

// Batched evaluation of integer and real affine forms. These are the inner
// loops of constraint filtering (one form over many determinant masks) and
// residual evaluation (many forms over one occupation vector).
//
// Each routine has a scalar reference and, on x86-64, an AVX2 variant picked
// at runtime. Both variants accumulate in the same order and produce
// identical results.

#include <cstdint>
#include <span>

namespace gpcci::kernels {

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa) noexcept;
bool isa_available(Isa isa) noexcept;
/// Fastest variant supported by the build and the running CPU.
Isa best_isa() noexcept;
Isa active_isa() noexcept;
/// Throws gpcci::Error(invalid_argument) if `isa` is unavailable.
void set_active_isa(Isa isa);

/// out[d] = kappa0 + sum of kappa[i] over the set bits i of masks[d].
/// Requires kappa.size() <= 64 and out.size() == masks.size().
void occupation_forms(std::span<const std::uint64_t> masks, std::int64_t kappa0,
                      std::span<const std::int64_t> kappa, std::span<std::int64_t> out);

/// out[c] = offsets[c] + sum_i coeffs[c * n.size() + i] * n[i], summed in
/// increasing i. coeffs is row-major (forms x n.size()).
void affine_forms(std::span<const double> coeffs, std::span<const double> offsets,
                  std::span<const double> n, std::span<double> out);

namespace scalar {
void occupation_forms(std::span<const std::uint64_t> masks, std::int64_t kappa0,
                      std::span<const std::int64_t> kappa, std::span<std::int64_t> out);
void affine_forms(std::span<const double> coeffs, std::span<const double> offsets,
                  std::span<const double> n, std::span<double> out);
}  // namespace scalar

namespace avx2 {
void occupation_forms(std::span<const std::uint64_t> masks, std::int64_t kappa0,
                      std::span<const std::int64_t> kappa, std::span<std::int64_t> out);
void affine_forms(std::span<const double> coeffs, std::span<const double> offsets,
                  std::span<const double> n, std::span<double> out);
}  // namespace avx2

}  // namespace gpcci::kernels
