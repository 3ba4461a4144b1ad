#include <cmath>

#include "toposm/kernels.hpp"

// OpenMP variants of the kernels. Work is split by matrix row; every row's
// accumulation order matches the serial reference exactly, and the final
// kms reduction runs over row partials in index order, so serial and parallel
// results are bitwise identical. Without OpenMP these compile to the same
// loops run on one thread.

namespace toposm::kernels {

namespace {

struct RowSpan {
  int x, lo, hi;
};

std::vector<RowSpan> rows_of(const BlockLayout& L) {
  std::vector<RowSpan> rows;
  rows.reserve(L.total);
  for (const auto& [lo, hi] : L.blocks)
    for (int x = lo; x < hi; ++x) rows.push_back({x, lo, hi});
  return rows;
}

}  // namespace

void block_multiply_omp(const BlockLayout& L, const cd* a, const cd* b, cd* out) {
  const int n = L.total;
  std::fill(out, out + static_cast<std::size_t>(n) * n, cd{});
  const auto rows = rows_of(L);
  const int r = static_cast<int>(rows.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int i = 0; i < r; ++i) {
    const auto [x, lo, hi] = rows[i];
    for (int y = lo; y < hi; ++y) {
      cd acc{};
      for (int k = lo; k < hi; ++k) acc += a[x * n + k] * b[k * n + y];
      out[x * n + y] = acc;
    }
  }
}

void modular_phase_omp(const BlockLayout& L, const double* lambda, double t, const cd* a,
                       cd* out) {
  const int n = L.total;
  std::fill(out, out + static_cast<std::size_t>(n) * n, cd{});
  const auto rows = rows_of(L);
  const int r = static_cast<int>(rows.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int i = 0; i < r; ++i) {
    const auto [x, lo, hi] = rows[i];
    for (int y = lo; y < hi; ++y) {
      const double ratio = lambda[x] / lambda[y];
      out[x * n + y] =
          ratio == 1.0 ? a[x * n + y] : std::exp(cd(0.0, -t * std::log(ratio))) * a[x * n + y];
    }
  }
}

cd kms_sum_omp(const BlockLayout& L, const double* lambda, cd z, const cd* u, const cd* v) {
  const int n = L.total;
  const auto rows = rows_of(L);
  const int r = static_cast<int>(rows.size());
  std::vector<cd> partial(rows.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int i = 0; i < r; ++i) {
    const auto [x, lo, hi] = rows[i];
    cd row{};
    for (int y = lo; y < hi; ++y) {
      const double lnr = std::log(lambda[y] / lambda[x]);
      const cd phase = lnr == 0.0 ? cd(1.0, 0.0) : std::exp(cd(-z.imag(), z.real()) * lnr);
      row += phase * u[x * n + y] * v[y * n + x];
    }
    partial[i] = row * lambda[x];
  }
  cd total{};
  for (const cd& p : partial) total += p;
  return total;
}

// dispatchers: tiny matrices are not worth a thread team
namespace {
constexpr int kParallelThreshold = 32;
}

void block_multiply(const BlockLayout& L, const cd* a, const cd* b, cd* out) {
  if (L.total >= kParallelThreshold)
    block_multiply_omp(L, a, b, out);
  else
    block_multiply_serial(L, a, b, out);
}

void modular_phase(const BlockLayout& L, const double* lambda, double t, const cd* a, cd* out) {
  if (L.total >= kParallelThreshold)
    modular_phase_omp(L, lambda, t, a, out);
  else
    modular_phase_serial(L, lambda, t, a, out);
}

cd kms_sum(const BlockLayout& L, const double* lambda, cd z, const cd* u, const cd* v) {
  return L.total >= kParallelThreshold ? kms_sum_omp(L, lambda, z, u, v)
                                       : kms_sum_serial(L, lambda, z, u, v);
}

}  // namespace toposm::kernels
