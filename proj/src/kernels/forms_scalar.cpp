#include <bit>

#include "gpcci/kernels/forms.hpp"

namespace gpcci::kernels::scalar {

void occupation_forms(std::span<const std::uint64_t> masks, std::int64_t kappa0,
                      std::span<const std::int64_t> kappa, std::span<std::int64_t> out) {
  for (std::size_t d = 0; d < masks.size(); ++d) {
    std::int64_t acc = kappa0;
    for (std::uint64_t rest = masks[d]; rest; rest &= rest - 1) {
      acc += kappa[static_cast<std::size_t>(std::countr_zero(rest))];
    }
    out[d] = acc;
  }
}

void affine_forms(std::span<const double> coeffs, std::span<const double> offsets,
                  std::span<const double> n, std::span<double> out) {
  const std::size_t m = n.size();
  for (std::size_t c = 0; c < offsets.size(); ++c) {
    double acc = offsets[c];
    const double* row = coeffs.data() + c * m;
    for (std::size_t i = 0; i < m; ++i) acc = acc + row[i] * n[i];
    out[c] = acc;
  }
}

}  // namespace gpcci::kernels::scalar
