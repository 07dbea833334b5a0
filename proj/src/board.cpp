#include "censim/board.hpp"

#include <cmath>
#include <stdexcept>

namespace censim {
namespace {

void require_tip_value(double t, const char* what) {
  if (!std::isfinite(t) || t < 0.0) {
    throw std::invalid_argument(std::string(what) +
                                ": tip must be finite and >= 0");
  }
}

}  // namespace

void validate(const BoardSpec& board) {
  if (const auto* seq = std::get_if<SequentialBlocks>(&board)) {
    if (seq->m < 1) {
      throw std::invalid_argument("SequentialBlocks: m must be >= 1");
    }
  } else if (const auto* conc = std::get_if<ConcurrentProposers>(&board)) {
    if (conc->k < 2) {
      throw std::invalid_argument("ConcurrentProposers: k must be >= 2");
    }
  }
}

void validate(const TipOffer& tip) {
  if (const auto* flat = std::get_if<FlatTip>(&tip)) {
    require_tip_value(flat->t, "FlatTip");
  } else {
    const auto& cond = std::get<ConditionalTip>(tip);
    require_tip_value(cond.t, "ConditionalTip");
    require_tip_value(cond.T, "ConditionalTip");
    if (cond.T < cond.t) {
      throw std::invalid_argument("ConditionalTip: requires T >= t");
    }
  }
}

double censorship_resistance(const BoardSpec& board, const TipOffer& tip) {
  validate(board);
  validate(tip);
  if (std::holds_alternative<ConcurrentProposers>(board)) {
    const auto* cond = std::get_if<ConditionalTip>(&tip);
    if (cond == nullptr) {
      throw std::invalid_argument(
          "censorship_resistance: concurrent proposers need a conditional tip");
    }
    return std::get<ConcurrentProposers>(board).k * cond->T;
  }
  const auto* flat = std::get_if<FlatTip>(&tip);
  if (flat == nullptr) {
    throw std::invalid_argument(
        "censorship_resistance: conditional tips need a concurrent board");
  }
  if (std::holds_alternative<SingleBlock>(board)) {
    return flat->t;
  }
  return std::get<SequentialBlocks>(board).m * flat->t;
}

}  // namespace censim
