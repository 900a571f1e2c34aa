#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vw/diagram.hpp"

namespace vw {

// Kinds are declared in canonical monomial order.
enum class TokenKind : std::uint8_t { Point, HalfLine, Chord, Bottom, Top };

/// One generator of an orienting monomial.
///   Point(x), Bottom(x): point x
///   HalfLine(x, y), Top(x, y): y-th asterisk over point x, y = 1 topmost
///   Chord(x, y): chord oriented from x to y
struct Token {
  TokenKind kind = TokenKind::Point;
  std::uint8_t x = 0;
  std::uint8_t y = 0;

  static Token point(int p) { return {TokenKind::Point, u8(p), 0}; }
  static Token half_line(int p, int r) { return {TokenKind::HalfLine, u8(p), u8(r)}; }
  static Token chord(int from, int to) { return {TokenKind::Chord, u8(from), u8(to)}; }
  static Token bottom(int p) { return {TokenKind::Bottom, u8(p), 0}; }
  static Token top(int p, int r) { return {TokenKind::Top, u8(p), u8(r)}; }

  /// Degree parity: points on the line and on half-lines have degree -1,
  /// the rest degree d-1.
  bool odd(Parity parity) const {
    return kind == TokenKind::Point || kind == TokenKind::HalfLine || asterisk_degree_odd(parity);
  }

  bool operator==(const Token&) const = default;

 private:
  static std::uint8_t u8(int v) { return static_cast<std::uint8_t>(v); }
};

using Monomial = std::vector<Token>;

struct SignedDiagram {
  Diagram diagram;
  int sign = 1;
  bool operator==(const SignedDiagram&) const = default;
};

/// The canonical orienting monomial of a diagram (chords as stored).
Monomial canonical_monomial(const Diagram& d);

/// perm[k] is the original position of the token placed at position k.
int koszul_sign(const std::vector<int>& perm, const std::vector<bool>& odd);

/// Canonicalizes `raw` oriented by `monomial`. Chords of `raw` may be stored in
/// either orientation; the orientation that counts is the one in the monomial.
SignedDiagram canonicalize(const Diagram& raw, const Monomial& monomial, Parity parity);

/// Builds the diagram on n points whose generators are exactly `tokens` and
/// returns it with the sign relative to its canonical monomial. Returns
/// nothing when the generators describe a zero diagram (a repeated bottom
/// asterisk, a multiple edge, a cycle). Throws TokenMismatch on malformed input.
std::optional<SignedDiagram> assemble(int n, const Monomial& tokens, Parity parity);

}  // namespace vw
