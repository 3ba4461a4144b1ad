#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace toposm {
class FiniteAction;
}

// Dense numeric inner loops on block-diagonal operator matrices. Each kernel
// has a serial reference and an OpenMP variant; both accumulate in the same
// order (row partials, sequential reduce), so their results are bitwise
// identical and the tests compare them exactly. The unsuffixed names dispatch.
namespace toposm::kernels {

using cd = std::complex<double>;

// fibers of an action are contiguous index ranges; a layout is those ranges
struct BlockLayout {
  std::vector<std::pair<int, int>> blocks;  // [begin, end) per object
  int total = 0;
  static BlockLayout of(const FiniteAction& X);
};

// out = a·b blockwise; out must not alias a or b. Entries outside the
// diagonal blocks are written as zero.
void block_multiply_serial(const BlockLayout& L, const cd* a, const cd* b, cd* out);
void block_multiply_omp(const BlockLayout& L, const cd* a, const cd* b, cd* out);
void block_multiply(const BlockLayout& L, const cd* a, const cd* b, cd* out);

// out[x][y] = (lambda[x]/lambda[y])^{-it} · a[x][y]; entries with ratio
// exactly 1 (diagonal included) are copied untouched
void modular_phase_serial(const BlockLayout& L, const double* lambda, double t, const cd* a,
                          cd* out);
void modular_phase_omp(const BlockLayout& L, const double* lambda, double t, const cd* a, cd* out);
void modular_phase(const BlockLayout& L, const double* lambda, double t, const cd* a, cd* out);

// Σ over same-block pairs (x,y) of (lambda[y]/lambda[x])^{iz}·u[x][y]·v[y][x]·lambda[x]
cd kms_sum_serial(const BlockLayout& L, const double* lambda, cd z, const cd* u, const cd* v);
cd kms_sum_omp(const BlockLayout& L, const double* lambda, cd z, const cd* u, const cd* v);
cd kms_sum(const BlockLayout& L, const double* lambda, cd z, const cd* u, const cd* v);

}  // namespace toposm::kernels
