#include "tripmd/vsax.hpp"

#include "support.hpp"

#include <doctest.h>

#include <numeric>
#include <sstream>

using namespace tripmd;
using namespace tripmd::testing;

TEST_CASE("percentiles interpolate linearly between ranks") {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  std::reverse(v.begin(), v.end());
  CHECK(percentile(v, 5) == doctest::Approx(5.95));
  CHECK(percentile(v, 15) == doctest::Approx(15.85));
  CHECK(percentile(v, 85) == doctest::Approx(85.15));
  CHECK(percentile(v, 95) == doctest::Approx(95.05));
  CHECK(percentile(v, 0) == 1.0);
  CHECK(percentile(v, 100) == 100.0);
  CHECK(percentile({7.0}, 42) == 7.0);
  CHECK_THROWS_AS(percentile({}, 5), Error);
}

TEST_CASE("breakpoints pool every trip per channel") {
  Series a(50, 2), b(50, 2);
  for (Index i = 0; i < 50; ++i) {
    a(i, 0) = static_cast<double>(i + 1);
    b(i, 0) = static_cast<double>(i + 51);
    a(i, 1) = b(i, 1) = 0.0;
  }
  const std::vector<TripRecording> trips{make_trip("a", a), make_trip("b", b)};
  const auto bp = compute_breakpoints(trips);
  REQUIRE(bp.size() == 2);
  CHECK(bp.channels[0][1] == doctest::Approx(5.95));
  CHECK(bp.channels[0][4] == doctest::Approx(95.05));

  CHECK(bp.symbol(0, 5.0) == 0);
  CHECK(bp.symbol(0, 5.95) == 1);
  CHECK(bp.symbol(0, 50.0) == 2);
  CHECK(bp.symbol(0, 85.15) == 3);
  CHECK(bp.symbol(0, 99.0) == 4);
  // A constant channel collapses every breakpoint; everything maps to the middle symbol.
  CHECK(bp.symbol(1, -1.0) == 2);
  CHECK(bp.symbol(1, 1.0) == 2);
}

TEST_CASE("equal consecutive windows merge into one letter") {
  Breakpoints bp;
  const double inf = std::numeric_limits<double>::infinity();
  bp.channels.push_back({-inf, -2, -1, 1, 2, inf});
  // Window means 0, 0, 3, 0, -3; the trailing sample never forms a window.
  const auto seq = encode(make_trip("t", column({0, 0, 0, 0, 3, 3, 0, 0, -3, -3, 9})), 2, bp);
  REQUIRE(seq.letters.size() == 4);
  CHECK(seq.letters[0].symbols == SymbolTuple{2});
  CHECK(seq.letters[0].span.start == 0);
  CHECK(seq.letters[0].span.end == 4);
  CHECK(seq.letters[1].symbols == SymbolTuple{4});
  CHECK(seq.letters[3].symbols == SymbolTuple{0});
  CHECK(seq.letters[3].span.end == 10);

  const auto ws = words(seq, 3);
  REQUIRE(ws.size() == 2);
  CHECK(pattern_key(ws[0].symbols) == "3.5.3");
  CHECK(ws[0].span.start == 0);
  CHECK(ws[0].span.end == 8);
  CHECK(ws[1].letter_offsets == std::vector<Index>{4, 6, 8});
  CHECK(words(seq, 5).empty());

  CHECK_THROWS_AS(encode(make_trip("t", column({1})), 2, bp), Error);
}

TEST_CASE("pattern keys round trip") {
  const Pattern p{{2, 2}, {4, 0}, {4, 4}};
  CHECK(pattern_key(p) == "33.51.55");
  CHECK(parse_pattern("33.51.55") == p);
  CHECK_THROWS_AS(parse_pattern("36.11"), Error);
}

TEST_CASE("encoded letters tile the trip with no equal neighbours") {
  auto rng = make_rng(3);
  std::vector<TripRecording> trips;
  for (int k = 0; k < 6; ++k) {
    trips.push_back(make_trip("t" + std::to_string(k),
                              random_series(rng, 20 + static_cast<Index>(uniform_index(rng, 200)), 2)));
  }
  const auto bp = compute_breakpoints(trips);
  for (Index letter_size : {1, 2, 5, 7}) {
    for (const auto& trip : trips) {
      const auto seq = encode(trip, letter_size, bp);
      Index cursor = 0;
      for (std::size_t i = 0; i < seq.letters.size(); ++i) {
        const auto& l = seq.letters[i];
        CHECK(l.span.start == cursor);
        CHECK(l.span.length() % letter_size == 0);
        CHECK(l.span.length() > 0);
        if (i > 0) CHECK(l.symbols != seq.letters[i - 1].symbols);
        cursor = l.span.end;
      }
      CHECK(cursor == trip.length() / letter_size * letter_size);
    }
  }
}

TEST_CASE("letters export with one-based symbols") {
  Breakpoints bp;
  const double inf = std::numeric_limits<double>::infinity();
  bp.channels.push_back({-inf, -2, -1, 1, 2, inf});
  const auto seq = encode(make_trip("t", column({5, 5, -5, -5})), 2, bp);
  std::ostringstream out;
  write_letters(out, seq);
  CHECK(out.str() == "start,end,symbol_ch1\n0,2,5\n2,4,1\n");
}
