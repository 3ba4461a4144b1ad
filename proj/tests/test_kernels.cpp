#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <vector>

#include "support.hpp"
#include "toposm/kernels.hpp"
#include "toposm/models.hpp"
#include "toposm/operator.hpp"
#include "toposm/rng.hpp"

using namespace toposm;
using namespace toposm::kernels;

namespace {

// a few blocks, sizes chosen to straddle the parallel-dispatch threshold
BlockLayout mixed_layout() {
  BlockLayout L;
  int begin = 0;
  for (int size : {3, 17, 40, 12}) {
    L.blocks.emplace_back(begin, begin + size);
    begin += size;
  }
  L.total = begin;
  return L;
}

std::vector<cd> random_block_matrix(const BlockLayout& L, Rng& rng) {
  std::vector<cd> m(static_cast<std::size_t>(L.total) * L.total, cd(0, 0));
  for (auto [b, e] : L.blocks)
    for (int x = b; x < e; ++x)
      for (int y = b; y < e; ++y)
        m[static_cast<std::size_t>(x) * L.total + y] =
            cd(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return m;
}

std::vector<double> random_density(const BlockLayout& L, Rng& rng) {
  std::vector<double> d(L.total);
  for (double& v : d) v = rng.next_dyadic();
  return d;
}

}  // namespace

TEST_CASE("layout mirrors the fiber ranges of an action") {
  GroupoidPtr g = testing::z2_groupoid();
  ActionPtr X = testing::z2_three(g);
  BlockLayout L = BlockLayout::of(*X);
  CHECK(L.total == 3);
  REQUIRE(L.blocks.size() == 1);
  CHECK(L.blocks[0] == std::pair<int, int>(0, 3));
}

TEST_CASE("serial and parallel multiplication agree bitwise") {
  BlockLayout L = mixed_layout();
  Rng rng(101);
  std::vector<cd> a = random_block_matrix(L, rng);
  std::vector<cd> b = random_block_matrix(L, rng);
  std::vector<cd> out_s(a.size()), out_p(a.size()), out_d(a.size());
  block_multiply_serial(L, a.data(), b.data(), out_s.data());
  block_multiply_omp(L, a.data(), b.data(), out_p.data());
  block_multiply(L, a.data(), b.data(), out_d.data());
  CHECK(out_s == out_p);
  CHECK(out_s == out_d);
}

TEST_CASE("serial and parallel phase twist agree bitwise") {
  BlockLayout L = mixed_layout();
  Rng rng(102);
  std::vector<cd> a = random_block_matrix(L, rng);
  std::vector<double> lam = random_density(L, rng);
  for (double t : {-4.0, 0.0, 0.5, 3.25}) {
    std::vector<cd> out_s(a.size()), out_p(a.size()), out_d(a.size());
    modular_phase_serial(L, lam.data(), t, a.data(), out_s.data());
    modular_phase_omp(L, lam.data(), t, a.data(), out_p.data());
    modular_phase(L, lam.data(), t, a.data(), out_d.data());
    CHECK(out_s == out_p);
    CHECK(out_s == out_d);
  }
}

TEST_CASE("serial and parallel strip sums agree bitwise") {
  BlockLayout L = mixed_layout();
  Rng rng(103);
  std::vector<cd> u = random_block_matrix(L, rng);
  std::vector<cd> v = random_block_matrix(L, rng);
  std::vector<double> lam = random_density(L, rng);
  for (cd z : {cd(0, 0), cd(2.5, -0.5), cd(-4, -1)}) {
    cd s = kms_sum_serial(L, lam.data(), z, u.data(), v.data());
    cd p = kms_sum_omp(L, lam.data(), z, u.data(), v.data());
    cd d = kms_sum(L, lam.data(), z, u.data(), v.data());
    CHECK(s == p);
    CHECK(s == d);
  }
}

TEST_CASE("phase twist leaves the diagonal untouched, bit for bit") {
  BlockLayout L = mixed_layout();
  Rng rng(104);
  std::vector<cd> a = random_block_matrix(L, rng);
  std::vector<double> lam = random_density(L, rng);
  std::vector<cd> out(a.size());
  modular_phase(L, lam.data(), 1.75, a.data(), out.data());
  for (int x = 0; x < L.total; ++x)
    CHECK(out[static_cast<std::size_t>(x) * L.total + x] ==
          a[static_cast<std::size_t>(x) * L.total + x]);

  // constant density freezes everything
  std::vector<double> flat(L.total, 0.5);
  modular_phase(L, flat.data(), 2.0, a.data(), out.data());
  CHECK(out == a);
}

TEST_CASE("block multiplication matches the operator-level product") {
  GroupoidPtr g = testing::z2_groupoid();
  ActionPtr X = testing::z2_three(g);
  Rng rng(105);
  OperatorMatrix a = models::random_algebra_element(X, rng);
  OperatorMatrix b = models::random_algebra_element(X, rng);
  BlockLayout L = BlockLayout::of(*X);
  std::vector<cd> out(a.dense().size());
  block_multiply(L, a.dense().data(), b.dense().data(), out.data());
  OperatorMatrix prod = a.multiply(b);
  CHECK(out == prod.dense());
}
