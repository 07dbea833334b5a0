#include <doctest.h>

#include <stdexcept>

#include "censim/board.hpp"
#include "censim/random.hpp"

using namespace censim;

TEST_CASE("censorship cost per board shape") {
  CHECK(censorship_resistance(SingleBlock{}, FlatTip{0.4}) == 0.4);
  CHECK(censorship_resistance(SequentialBlocks{3}, FlatTip{0.4}) ==
        doctest::Approx(1.2).epsilon(1e-15));
  CHECK(censorship_resistance(ConcurrentProposers{2},
                              ConditionalTip{0.1, 0.9}) ==
        doctest::Approx(1.8).epsilon(1e-15));
}

TEST_CASE("cost scales linearly in the tip") {
  RandomStream rng(11);
  for (int i = 0; i < 100; ++i) {
    const double t = rng.next_uniform();
    const double lam = 2.0 * rng.next_uniform();
    CHECK(censorship_resistance(SingleBlock{}, FlatTip{lam * t}) ==
          doctest::Approx(lam * censorship_resistance(SingleBlock{},
                                                      FlatTip{t}))
              .epsilon(1e-12));
    CHECK(censorship_resistance(SequentialBlocks{4}, FlatTip{lam * t}) ==
          doctest::Approx(lam * censorship_resistance(SequentialBlocks{4},
                                                      FlatTip{t}))
              .epsilon(1e-12));
    const double T = t + rng.next_uniform();
    CHECK(censorship_resistance(ConcurrentProposers{3},
                                ConditionalTip{lam * t, lam * T}) ==
          doctest::Approx(lam * censorship_resistance(ConcurrentProposers{3},
                                                      ConditionalTip{t, T}))
              .epsilon(1e-12));
  }
}

TEST_CASE("conditional cost ignores the shared tip") {
  const double base = censorship_resistance(ConcurrentProposers{5},
                                            ConditionalTip{0.0, 0.6});
  CHECK(censorship_resistance(ConcurrentProposers{5},
                              ConditionalTip{0.3, 0.6}) == base);
  CHECK(censorship_resistance(ConcurrentProposers{5},
                              ConditionalTip{0.6, 0.6}) == base);
}

TEST_CASE("cost is monotone in each tip coordinate") {
  CHECK(censorship_resistance(SingleBlock{}, FlatTip{0.2}) <=
        censorship_resistance(SingleBlock{}, FlatTip{0.3}));
  CHECK(censorship_resistance(SequentialBlocks{2}, FlatTip{0.2}) <=
        censorship_resistance(SequentialBlocks{2}, FlatTip{0.3}));
  CHECK(censorship_resistance(ConcurrentProposers{2},
                              ConditionalTip{0.1, 0.5}) <=
        censorship_resistance(ConcurrentProposers{2},
                              ConditionalTip{0.1, 0.6}));
}

TEST_CASE("board and tip validation") {
  CHECK_THROWS_AS(validate(BoardSpec{SequentialBlocks{0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate(BoardSpec{ConcurrentProposers{1}}),
                  std::invalid_argument);
  CHECK_NOTHROW(validate(BoardSpec{SequentialBlocks{1}}));
  CHECK_NOTHROW(validate(BoardSpec{ConcurrentProposers{2}}));

  CHECK_THROWS_AS(validate(TipOffer{FlatTip{-0.1}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(TipOffer{ConditionalTip{0.5, 0.2}}),
                  std::invalid_argument);
  CHECK_NOTHROW(validate(TipOffer{ConditionalTip{0.2, 0.2}}));
}

TEST_CASE("incompatible board and tip pairings are rejected") {
  CHECK_THROWS_AS(
      censorship_resistance(ConcurrentProposers{2}, FlatTip{0.4}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      censorship_resistance(SingleBlock{}, ConditionalTip{0.1, 0.9}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      censorship_resistance(SequentialBlocks{3}, ConditionalTip{0.1, 0.9}),
      std::invalid_argument);
}
