#include <atomic>

#include "gpcci/error.hpp"
#include "gpcci/kernels/forms.hpp"

namespace gpcci::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(GPCCI_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{best_isa()};
  return isa;
}

}  // namespace

const char* to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return cpu_has_avx2();
  }
  return false;
}

Isa best_isa() noexcept { return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw Error(Errc::invalid_argument, std::string("kernel variant unavailable: ") + to_string(isa));
  }
  active().store(isa, std::memory_order_relaxed);
}

void occupation_forms(std::span<const std::uint64_t> masks, std::int64_t kappa0,
                      std::span<const std::int64_t> kappa, std::span<std::int64_t> out) {
  if (kappa.size() > 64 || out.size() != masks.size()) {
    throw Error(Errc::dimension_mismatch, "occupation_forms: bad extents");
  }
#if defined(GPCCI_WITH_AVX2)
  if (active_isa() == Isa::avx2) return avx2::occupation_forms(masks, kappa0, kappa, out);
#endif
  scalar::occupation_forms(masks, kappa0, kappa, out);
}

void affine_forms(std::span<const double> coeffs, std::span<const double> offsets,
                  std::span<const double> n, std::span<double> out) {
  if (coeffs.size() != offsets.size() * n.size() || out.size() != offsets.size()) {
    throw Error(Errc::dimension_mismatch, "affine_forms: bad extents");
  }
#if defined(GPCCI_WITH_AVX2)
  if (active_isa() == Isa::avx2) return avx2::affine_forms(coeffs, offsets, n, out);
#endif
  scalar::affine_forms(coeffs, offsets, n, out);
}

}  // namespace gpcci::kernels
