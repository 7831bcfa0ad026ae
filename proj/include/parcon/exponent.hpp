#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

#include "parcon/rational.hpp"

namespace parcon {

enum class ExponentKind {
  Rational,  // x^e, e rational
  LogLex,    // l_0^a0 * l_1^a1 * ... with l_0 = x, l_{k+1} = log l_k
};

const char* to_string(ExponentKind kind);

/// Element of an ordered abelian group of monomial exponents.
///
/// Both groups are stored as a coordinate vector of rationals with trailing
/// zeros removed; a Rational exponent has at most one coordinate. Ordering is
/// lexicographic, which for the one-coordinate case is the rational order.
/// Larger exponent means larger monomial (x^2 > x > 1 > x^-1).
///
/// Coordinates are reduced fractions with 64-bit parts held inline, so
/// exponent arithmetic never allocates. Arithmetic is checked: a result that
/// leaves the 64-bit range throws DomainError rather than wrapping. At most
/// kMaxCoords coordinates (log depth kMaxCoords - 1) are supported.
///
/// Mixing kinds in arithmetic or comparison throws ContextMismatchError.
class Exponent {
 public:
  static constexpr std::size_t kMaxCoords = 8;

  explicit Exponent(ExponentKind kind = ExponentKind::Rational) : kind_(kind) {}

  static Exponent zero(ExponentKind kind) { return Exponent(kind); }
  static Exponent rational(const Rational& value);
  static Exponent loglex(const std::vector<Rational>& coords);
  // Exponent of the monomial x.
  static Exponent x(ExponentKind kind);
  // Exponent of 1/(l_0 l_1 ... l_n).
  static Exponent pseudo_gap(std::size_t n);

  ExponentKind kind() const noexcept { return kind_; }
  // Number of stored coordinates (trailing zeros excluded).
  std::size_t size() const noexcept { return size_; }
  std::vector<Rational> coords() const;
  // Coordinate k; zero past the stored length.
  Rational coord(std::size_t k) const;
  int coord_sign(std::size_t k) const noexcept;
  bool coord_is(std::size_t k, long value) const noexcept;
  // Index of the last nonzero coordinate; 0 for exponents involving x only.
  std::size_t depth() const noexcept { return size_ == 0 ? 0 : size_ - 1u; }
  bool is_zero() const noexcept { return size_ == 0; }

  // Value of a Rational-kind exponent.
  Rational value() const;

  Exponent& operator+=(const Exponent& other);
  Exponent& operator-=(const Exponent& other);
  Exponent operator-() const;
  Exponent scaled(const Rational& factor) const;
  // Adds delta to the x coordinate.
  Exponent shifted(const Rational& delta) const;

  friend Exponent operator+(Exponent a, const Exponent& b) { return a += b; }
  friend Exponent operator-(Exponent a, const Exponent& b) { return a -= b; }

  friend bool operator==(const Exponent& a, const Exponent& b) noexcept;
  friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b);

  std::size_t hash() const noexcept;

  struct Q {
    std::int64_t num = 0;
    std::int64_t den = 1;
    friend bool operator==(const Q&, const Q&) = default;
  };

 private:
  void trim() noexcept;
  void require_same_kind(const Exponent& other) const;
  void set_size(std::size_t n);

  ExponentKind kind_;
  std::uint8_t size_ = 0;
  std::array<Q, kMaxCoords> c_{};
};

Exponent exp_add(const Exponent& a, const Exponent& b);
std::strong_ordering exp_cmp(const Exponent& a, const Exponent& b);

// Monomial text: "1", "x", "x^(1/2)", "x^2*log(x)^(-1)*log(log(x))".
std::string to_string(const Exponent& e);

struct ExponentHash {
  std::size_t operator()(const Exponent& e) const noexcept { return e.hash(); }
};

}  // namespace parcon
