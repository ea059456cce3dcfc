#pragma once

#include <cstdint>
#include <string_view>

namespace qwi {

// Direction of motion on an orbital: points move up, down, or stay fixed.
enum class Parity : std::uint8_t { plus, minus, zero };

// Which side of its finite endpoint a cofinal support lies on:
// left = (-inf, q), right = (q, +inf).
enum class Side : std::uint8_t { left, right };

constexpr std::string_view to_string(Parity p) {
  switch (p) {
    case Parity::plus: return "+";
    case Parity::minus: return "-";
    case Parity::zero: return "0";
  }
  return "?";
}

constexpr std::string_view to_string(Side s) { return s == Side::left ? "left" : "right"; }

constexpr Parity opposite(Parity p) {
  return p == Parity::plus ? Parity::minus : (p == Parity::minus ? Parity::plus : Parity::zero);
}

constexpr Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }

}  // namespace qwi
