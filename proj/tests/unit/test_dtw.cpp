#include "tripmd/dtw.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace tripmd;
using namespace tripmd::testing;

TEST_CASE("small hand-checked distances") {
  CHECK(dtw(column({0, 1, 2}), column({0, 2})) == doctest::Approx(1.0));
  CHECK(dtw(column({1, 2, 3}), column({1, 2, 3})) == 0.0);
  CHECK(dtw(column({0}), column({3, 4})) == doctest::Approx(7.0));

  Series a(2, 2), b(1, 2);
  a << 0, 0, 3, 4;
  b << 0, 0;
  CHECK(dtw(a, b) == doctest::Approx(5.0));
}

TEST_CASE("random pairs agree with the full-matrix recursion") {
  auto rng = make_rng(2024);
  for (int rep = 0; rep < 300; ++rep) {
    const Index d = 1 + static_cast<Index>(uniform_index(rng, 3));
    const Index la = 1 + static_cast<Index>(uniform_index(rng, 15));
    const Index lb = 1 + static_cast<Index>(uniform_index(rng, 15));
    const Series a = random_series(rng, la, d);
    const Series b = random_series(rng, lb, d);
    const double full = dtw(a, b);
    CHECK(full == doctest::Approx(dtw_oracle(a, b)).epsilon(1e-12));
    CHECK(full == dtw(b, a));
    CHECK(dtw_align(a, b).distance == doctest::Approx(full).epsilon(1e-12));

    const Index gap = std::abs(la - lb);
    double previous = std::numeric_limits<double>::infinity();
    for (Index w = gap; w <= std::max(la, lb); ++w) {
      const double banded = dtw(a, b, DtwConfig{w});
      CHECK(banded == doctest::Approx(dtw_oracle(a, b, w)).epsilon(1e-12));
      CHECK(banded <= previous);
      previous = banded;
    }
    CHECK(previous == doctest::Approx(full).epsilon(1e-12));
  }
}

TEST_CASE("alignment paths are monotone, contiguous and reproduce the cost") {
  auto rng = make_rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const Series a = random_series(rng, 1 + static_cast<Index>(uniform_index(rng, 12)), 2);
    const Series b = random_series(rng, 1 + static_cast<Index>(uniform_index(rng, 12)), 2);
    const auto al = dtw_align(a, b);
    REQUIRE_FALSE(al.path.empty());
    CHECK(al.path.front() == std::pair<Index, Index>{0, 0});
    CHECK(al.path.back() == std::pair<Index, Index>{a.rows() - 1, b.rows() - 1});
    double cost = 0.0;
    for (std::size_t k = 0; k < al.path.size(); ++k) {
      const auto [i, j] = al.path[k];
      cost += (a.row(i) - b.row(j)).norm();
      if (k > 0) {
        const auto [pi, pj] = al.path[k - 1];
        CHECK(i - pi >= 0);
        CHECK(j - pj >= 0);
        CHECK(i - pi + j - pj >= 1);
        CHECK(i - pi <= 1);
        CHECK(j - pj <= 1);
      }
    }
    CHECK(cost == doctest::Approx(al.distance).epsilon(1e-12));
  }
}

TEST_CASE("argument errors") {
  const auto code = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::io;
  };
  Series empty(0, 1);
  CHECK(code([&] { dtw(empty, column({1})); }) == Errc::invalid_argument);
  CHECK(code([&] { dtw(column({1}), Series::Zero(2, 2)); }) == Errc::channel_mismatch);
  CHECK(code([&] { dtw(column({1, 2, 3, 4}), column({1}), DtwConfig{2}); }) == Errc::window_too_small);
  CHECK(code([&] { dtw(column({1}), column({1}), DtwConfig{-1}); }) == Errc::invalid_argument);
  CHECK(fit_window(DtwConfig{2}, 4, 1).window == 3);
  CHECK_FALSE(fit_window(DtwConfig{}, 4, 1).window.has_value());
}

TEST_CASE("pairwise matrix is symmetric with a zero diagonal") {
  auto rng = make_rng(8);
  std::vector<Series> items;
  for (int k = 0; k < 6; ++k) items.push_back(random_series(rng, 3 + k, 2));
  const auto m = pairwise_dtw(items);
  CHECK(m.isApprox(m.transpose()));
  CHECK(m.diagonal().isZero());
  CHECK(m(1, 4) == doctest::Approx(dtw_oracle(items[1], items[4])));
  try {
    pairwise_dtw(items, DtwConfig{1});
    FAIL("expected a window error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::window_too_small);
    CHECK(std::string(e.what()).find("pair (0,2)") != std::string::npos);
  }
}
