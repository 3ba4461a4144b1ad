#include <cmath>

#include "toposm/action.hpp"
#include "toposm/kernels.hpp"

namespace toposm::kernels {

BlockLayout BlockLayout::of(const FiniteAction& X) {
  BlockLayout L;
  L.total = X.size();
  const int n = X.groupoid()->object_count();
  L.blocks.reserve(n);
  for (int o = 0; o < n; ++o) L.blocks.emplace_back(X.fiber_begin(o), X.fiber_end(o));
  return L;
}

void block_multiply_serial(const BlockLayout& L, const cd* a, const cd* b, cd* out) {
  const int n = L.total;
  std::fill(out, out + static_cast<std::size_t>(n) * n, cd{});
  for (const auto& [lo, hi] : L.blocks)
    for (int x = lo; x < hi; ++x)
      for (int y = lo; y < hi; ++y) {
        cd acc{};
        for (int k = lo; k < hi; ++k) acc += a[x * n + k] * b[k * n + y];
        out[x * n + y] = acc;
      }
}

void modular_phase_serial(const BlockLayout& L, const double* lambda, double t, const cd* a,
                          cd* out) {
  const int n = L.total;
  std::fill(out, out + static_cast<std::size_t>(n) * n, cd{});
  for (const auto& [lo, hi] : L.blocks)
    for (int x = lo; x < hi; ++x)
      for (int y = lo; y < hi; ++y) {
        const double ratio = lambda[x] / lambda[y];
        out[x * n + y] =
            ratio == 1.0 ? a[x * n + y] : std::exp(cd(0.0, -t * std::log(ratio))) * a[x * n + y];
      }
}

cd kms_sum_serial(const BlockLayout& L, const double* lambda, cd z, const cd* u, const cd* v) {
  const int n = L.total;
  cd total{};
  for (const auto& [lo, hi] : L.blocks)
    for (int x = lo; x < hi; ++x) {
      cd row{};
      for (int y = lo; y < hi; ++y) {
        const double lnr = std::log(lambda[y] / lambda[x]);
        // (l[y]/l[x])^{iz} = exp(iz·ln r)
        const cd phase = lnr == 0.0 ? cd(1.0, 0.0) : std::exp(cd(-z.imag(), z.real()) * lnr);
        row += phase * u[x * n + y] * v[y * n + x];
      }
      total += row * lambda[x];
    }
  return total;
}

}  // namespace toposm::kernels
