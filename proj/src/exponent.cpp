#include "parcon/exponent.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <numeric>

#include "parcon/errors.hpp"

namespace parcon {

namespace {

using Q = Exponent::Q;
__extension__ typedef __int128 i128;

[[noreturn]] void overflow() { throw DomainError("exponent coordinate exceeds the 64-bit range"); }

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Q make(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den == 1) {
  } else if (num >= -INT64_MAX && num <= INT64_MAX && den <= INT64_MAX) {
    // 64-bit division is far cheaper than the 128-bit library routine.
    const auto g = std::gcd(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
    if (g > 1) {
      num /= g;
      den /= g;
    }
  } else {
    const i128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  if (num > INT64_MAX || num < -INT64_MAX || den > INT64_MAX) overflow();
  return Q{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

Q add(const Q& a, const Q& b) {
  if (a.den == 1 && b.den == 1) return make(i128(a.num) + b.num, 1);
  if (a.den == b.den) return make(i128(a.num) + b.num, a.den);
  return make(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
}

Q mul(const Q& a, const Q& b) { return make(i128(a.num) * b.num, i128(a.den) * b.den); }

int cmp(const Q& a, const Q& b) {
  if (a.den == b.den) return a.num < b.num ? -1 : a.num > b.num;
  const i128 l = i128(a.num) * b.den, r = i128(b.num) * a.den;
  return l < r ? -1 : l > r;
}

Q from_rational(const Rational& q) {
  if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p()) overflow();
  return make(q.get_num().get_si(), q.get_den().get_si());
}

Rational to_rational(const Q& q) { return Rational(mpz_class(q.num), mpz_class(q.den)); }

}  // namespace

const char* to_string(ExponentKind kind) {
  return kind == ExponentKind::Rational ? "rational" : "loglex";
}

void Exponent::set_size(std::size_t n) {
  if (n > kMaxCoords) throw DomainError("log depth above " + std::to_string(kMaxCoords - 1) + " is not supported");
  for (std::size_t k = size_; k < n; ++k) c_[k] = Q{};
  size_ = static_cast<std::uint8_t>(n);
}

Exponent Exponent::rational(const Rational& value) {
  Exponent e(ExponentKind::Rational);
  e.set_size(1);
  e.c_[0] = from_rational(value);
  e.trim();
  return e;
}

Exponent Exponent::loglex(const std::vector<Rational>& coords) {
  Exponent e(ExponentKind::LogLex);
  std::size_t n = coords.size();
  while (n > 0 && sgn(coords[n - 1]) == 0) --n;
  e.set_size(n);
  for (std::size_t k = 0; k < n; ++k) e.c_[k] = from_rational(coords[k]);
  return e;
}

Exponent Exponent::x(ExponentKind kind) {
  Exponent e(kind);
  e.set_size(1);
  e.c_[0] = Q{1, 1};
  return e;
}

Exponent Exponent::pseudo_gap(std::size_t n) {
  Exponent e(ExponentKind::LogLex);
  e.set_size(n + 1);
  for (std::size_t k = 0; k <= n; ++k) e.c_[k] = Q{-1, 1};
  return e;
}

std::vector<Rational> Exponent::coords() const {
  std::vector<Rational> out;
  out.reserve(size_);
  for (std::size_t k = 0; k < size_; ++k) out.push_back(to_rational(c_[k]));
  return out;
}

Rational Exponent::coord(std::size_t k) const { return k < size_ ? to_rational(c_[k]) : Rational(0); }

int Exponent::coord_sign(std::size_t k) const noexcept {
  if (k >= size_) return 0;
  return (c_[k].num > 0) - (c_[k].num < 0);
}

bool Exponent::coord_is(std::size_t k, long value) const noexcept {
  const Q q = k < size_ ? c_[k] : Q{};
  return q.den == 1 && q.num == value;
}

Rational Exponent::value() const {
  if (kind_ != ExponentKind::Rational) throw ContextMismatchError("value() on a log-lex exponent");
  return coord(0);
}

void Exponent::trim() noexcept {
  while (size_ > 0 && c_[size_ - 1u].num == 0) {
    c_[size_ - 1u] = Q{};
    --size_;
  }
}

void Exponent::require_same_kind(const Exponent& other) const {
  if (kind_ != other.kind_)
    throw ContextMismatchError(std::string("exponent kinds differ: ") + to_string(kind_) + " vs " +
                               to_string(other.kind_));
}

Exponent& Exponent::operator+=(const Exponent& other) {
  require_same_kind(other);
  if (size_ < other.size_) set_size(other.size_);
  for (std::size_t k = 0; k < other.size_; ++k) c_[k] = add(c_[k], other.c_[k]);
  trim();
  return *this;
}

Exponent& Exponent::operator-=(const Exponent& other) { return *this += -other; }

Exponent Exponent::operator-() const {
  Exponent e(*this);
  for (std::size_t k = 0; k < size_; ++k) e.c_[k].num = -e.c_[k].num;
  return e;
}

Exponent Exponent::scaled(const Rational& factor) const {
  const Q f = from_rational(factor);
  Exponent e(*this);
  for (std::size_t k = 0; k < size_; ++k) e.c_[k] = mul(e.c_[k], f);
  e.trim();
  return e;
}

Exponent Exponent::shifted(const Rational& delta) const {
  Exponent e(*this);
  if (e.size_ == 0) e.set_size(1);
  e.c_[0] = add(e.c_[0], from_rational(delta));
  e.trim();
  return e;
}

bool operator==(const Exponent& a, const Exponent& b) noexcept {
  return a.kind_ == b.kind_ && a.size_ == b.size_ && a.c_ == b.c_;
}

std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
  a.require_same_kind(b);
  const std::size_t n = std::max(a.size_, b.size_);
  for (std::size_t k = 0; k < n; ++k) {
    const int c = cmp(a.c_[k], b.c_[k]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::size_t Exponent::hash() const noexcept {
  std::size_t h = static_cast<std::size_t>(kind_) + 0x9e3779b97f4a7c15ull;
  for (std::size_t k = 0; k < size_; ++k) {
    h ^= static_cast<std::size_t>(c_[k].num) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(c_[k].den) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

Exponent exp_add(const Exponent& a, const Exponent& b) { return a + b; }

std::strong_ordering exp_cmp(const Exponent& a, const Exponent& b) { return a <=> b; }

std::string to_string(const Exponent& e) {
  std::string out;
  std::string base = "x";
  for (std::size_t k = 0; k < e.size(); ++k) {
    const Rational a = e.coord(k);
    if (sgn(a) != 0) {
      if (!out.empty()) out += "*";
      out += base;
      if (a != 1) {
        if (is_integer(a) && sgn(a) > 0)
          out += "^" + to_string(a);
        else
          out += "^(" + to_string(a) + ")";
      }
    }
    base = "log(" + base + ")";
  }
  return out.empty() ? "1" : out;
}

}  // namespace parcon
