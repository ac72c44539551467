#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "iratepl2c/errors.hpp"

namespace iratepl2c {

enum class Polarity { positive, negative };

/// UTF-8 negation sign used when rendering undesired features.
inline constexpr std::string_view kNegationSign = "\xC2\xAC";  // ¬

/// A configuration choice unit: a feature that is either desired (`F`) or
/// undesired (`¬F`).
struct Literal {
  std::string feature;
  Polarity polarity = Polarity::positive;

  Literal() = default;
  Literal(std::string f, Polarity p) : feature(std::move(f)), polarity(p) {}

  static Literal positive(std::string f) {
    return {std::move(f), Polarity::positive};
  }
  static Literal negative(std::string f) {
    return {std::move(f), Polarity::negative};
  }

  bool is_positive() const { return polarity == Polarity::positive; }

  Literal negated() const {
    return {feature, is_positive() ? Polarity::negative : Polarity::positive};
  }

  /// Renders as `F` or `¬F`.
  std::string str() const {
    return is_positive() ? feature : std::string(kNegationSign) + feature;
  }

  /// Accepts `F`, `¬F`, or the ASCII spelling `!F`.
  static Literal parse(std::string_view text) {
    Polarity p = Polarity::positive;
    if (text.substr(0, kNegationSign.size()) == kNegationSign) {
      text.remove_prefix(kNegationSign.size());
      p = Polarity::negative;
    } else if (!text.empty() && text.front() == '!') {
      text.remove_prefix(1);
      p = Polarity::negative;
    }
    if (text.empty()) throw ParseError("empty literal");
    return {std::string(text), p};
  }

  auto operator<=>(const Literal&) const = default;
};

}  // namespace iratepl2c
