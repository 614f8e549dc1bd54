#include "doctest.h"
#include "support.hpp"

using namespace latnet;
using fixture::delta;
using fixture::dense;
using fixture::dense_stp;

TEST_CASE("delta notation is 1-based and round trips") {
  const auto m = LogicalMatrix::delta(3, {1, 3, 2, 2});
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 4);
  CHECK(m[1] == 2);
  CHECK(m.delta_indices() == std::vector<std::size_t>{1, 3, 2, 2});
  CHECK(m.to_string() == "δ_3[1,3,2,2]");
  CHECK_THROWS_AS(LogicalMatrix::delta(3, {0}), DimensionError);
  CHECK_THROWS_AS(LogicalMatrix::delta(3, {4}), DimensionError);
}

TEST_CASE("logical semi-tensor product equals the dense definition") {
  SUBCASE("every shape up to 6") {
    for (std::size_t ar = 1; ar <= 6; ++ar)
      for (std::size_t ac = 1; ac <= 6; ++ac)
        for (std::size_t br = 1; br <= 6; ++br)
          for (std::size_t bc = 1; bc <= 6; ++bc) {
            const auto a = fixture::random_logical(ar, ac);
            const auto b = fixture::random_logical(br, bc);
            const auto got = stp(a, b);
            REQUIRE(dense(got) == dense_stp(dense(a), dense(b)));
          }
  }
  SUBCASE("random larger shapes") {
    for (int trial = 0; trial < 1000; ++trial) {
      const auto a = fixture::random_logical(fixture::uniform(1, 12), fixture::uniform(1, 24));
      const auto b = fixture::random_logical(fixture::uniform(1, 24), fixture::uniform(1, 12));
      REQUIRE(dense(stp(a, b)) == dense_stp(dense(a), dense(b)));
    }
  }
}

TEST_CASE("integer semi-tensor product equals the dense definition") {
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t ar = fixture::uniform(1, 5), ac = fixture::uniform(1, 6);
    const std::size_t br = fixture::uniform(1, 6), bc = fixture::uniform(1, 5);
    std::vector<std::int64_t> ea(ar * ac), eb(br * bc);
    for (auto& v : ea) v = static_cast<std::int64_t>(fixture::uniform(0, 6)) - 3;
    for (auto& v : eb) v = static_cast<std::int64_t>(fixture::uniform(0, 6)) - 3;
    const IntMatrix a(ar, ac, ea), b(br, bc, eb);
    REQUIRE(dense(stp(a, b)) == dense_stp(dense(a), dense(b)));
  }
}

TEST_CASE("stp reduces to the ordinary product on matching shapes") {
  const auto a = fixture::random_logical(4, 5);
  const auto b = fixture::random_logical(5, 3);
  CHECK(dense(stp(a, b)) == fixture::dense_mul(dense(a), dense(b)));
}

TEST_CASE("stp is associative") {
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = fixture::random_logical(fixture::uniform(1, 4), fixture::uniform(1, 8));
    const auto b = fixture::random_logical(fixture::uniform(1, 8), fixture::uniform(1, 8));
    const auto c = fixture::random_logical(fixture::uniform(1, 8), fixture::uniform(1, 4));
    REQUIRE(stp(stp(a, b), c) == stp(a, stp(b, c)));
  }
}

TEST_CASE("swap matrix exchanges factors") {
  for (std::size_t m = 1; m <= 5; ++m)
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto w = swap_matrix(m, n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const auto xv = LogicalMatrix::basis(m, i), yv = LogicalMatrix::basis(n, j);
          REQUIRE(stp(stp(w, xv), yv) == stp(yv, xv));
        }
    }
  CHECK(swap_matrix(2, 2) == LogicalMatrix::delta(4, {1, 3, 2, 4}));
}

TEST_CASE("power-reducing matrix squares basis vectors") {
  for (std::size_t k = 1; k <= 6; ++k)
    for (std::size_t i = 0; i < k; ++i) {
      const auto v = LogicalMatrix::basis(k, i);
      REQUIRE(stp(v, v) == stp(power_reduce_matrix(k), v));
    }
}

TEST_CASE("retrieval matrix picks one factor") {
  const std::size_t k = 3, n = 3;
  for (std::size_t idx = 0; idx < 27; ++idx) {
    const auto digits = unstack_index(idx, k, n);
    for (std::size_t i = 1; i <= n; ++i)
      REQUIRE(stp(retrieval_matrix(k, n, i), LogicalMatrix::basis(27, idx)) == LogicalMatrix::basis(k, digits[i - 1]));
  }
}

TEST_CASE("khatri-rao stacks columns") {
  const auto a = LogicalMatrix::delta(2, {1, 2, 2});
  const auto b = LogicalMatrix::delta(3, {3, 1, 2});
  const LogicalMatrix parts[] = {a, b};
  CHECK(khatri_rao(parts) == LogicalMatrix::delta(6, {3, 4, 5}));
  const LogicalMatrix one[] = {a};
  CHECK(khatri_rao(one) == a);
  const LogicalMatrix bad[] = {a, LogicalMatrix::identity(2)};
  CHECK_THROWS_AS(khatri_rao(bad), DimensionError);
}

TEST_CASE("stacked indices") {
  const std::vector<std::size_t> digits{2, 0, 1};
  CHECK(stack_index(digits, 3) == 19);
  CHECK(unstack_index(19, 3, 3) == digits);
  CHECK(checked_pow(5, 3) == 125);
  CHECK_THROWS_AS(checked_pow(10, 30), DimensionError);
}

TEST_CASE("kron of logical matrices matches the dense Kronecker product") {
  const auto a = fixture::random_logical(3, 2);
  const auto b = fixture::random_logical(2, 4);
  CHECK(dense(kron(a, b)) == fixture::dense_kron(dense(a), dense(b)));
}
