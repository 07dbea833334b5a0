#pragma once

#include <variant>

namespace censim {

// Bulletin-board shapes an auction can run on.
struct SingleBlock {};
struct SequentialBlocks {
  int m;  // number of blocks the bid can land in, >= 1
};
struct ConcurrentProposers {
  int k;  // proposers building the same slot, >= 2
};

using BoardSpec = std::variant<SingleBlock, SequentialBlocks, ConcurrentProposers>;

// Tip a bidder can attach. Flat tips pay t on inclusion; a conditional tip
// pays T when exactly one proposer includes the bid and t when more than one
// does (only meaningful on concurrent-proposer boards).
struct FlatTip {
  double t;
};
struct ConditionalTip {
  double t;
  double T;
};

using TipOffer = std::variant<FlatTip, ConditionalTip>;

void validate(const BoardSpec& board);
void validate(const TipOffer& tip);

// Minimum total payment an adversary must make to keep the bid off the board:
//   single block          -> t
//   m sequential blocks   -> m * t
//   k concurrent proposers-> k * T (every proposer must be paid the
//                            sole-includer tip it would forgo)
// Throws std::invalid_argument on an incompatible board/tip pairing.
double censorship_resistance(const BoardSpec& board, const TipOffer& tip);

}  // namespace censim
