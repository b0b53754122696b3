#ifndef BFILAB_RATIONAL_HPP
#define BFILAB_RATIONAL_HPP

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace bfilab {

// Exact rational arithmetic on 128-bit integers with overflow detection.
// Wide enough for every identity check in this project (denominators stay
// below ~10^13 after reduction); anything larger throws instead of silently
// wrapping.
class Rational {
 public:
  using Int = __int128;

  constexpr Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(Int num, Int den) : num_(num), den_(den) {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    normalize();
  }

  Int num() const { return num_; }
  Int den() const { return den_; }

  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& x, const Rational& y) {
    return Rational(add_checked(mul_checked(x.num_, y.den_),
                                mul_checked(y.num_, x.den_)),
                    mul_checked(x.den_, y.den_));
  }
  friend Rational operator-(const Rational& x, const Rational& y) {
    return x + (-y);
  }
  friend Rational operator*(const Rational& x, const Rational& y) {
    // Cross-reduce before multiplying to keep intermediates small.
    Int g1 = gcd128(abs128(x.num_), y.den_);
    Int g2 = gcd128(abs128(y.num_), x.den_);
    return Rational(mul_checked(x.num_ / g1, y.num_ / g2),
                    mul_checked(x.den_ / g2, y.den_ / g1));
  }
  friend Rational operator/(const Rational& x, const Rational& y) {
    if (y.num_ == 0) throw std::domain_error("Rational: division by zero");
    return x * Rational(y.den_, y.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  Rational& operator+=(const Rational& x) { return *this = *this + x; }
  Rational& operator-=(const Rational& x) { return *this = *this - x; }
  Rational& operator*=(const Rational& x) { return *this = *this * x; }
  Rational& operator/=(const Rational& x) { return *this = *this / x; }

  friend bool operator==(const Rational& x, const Rational& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend bool operator!=(const Rational& x, const Rational& y) {
    return !(x == y);
  }
  friend bool operator<(const Rational& x, const Rational& y) {
    return mul_checked(x.num_, y.den_) < mul_checked(y.num_, x.den_);
  }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string to_string() const {
    std::string s = int128_to_string(num_);
    if (den_ != 1) s += "/" + int128_to_string(den_);
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x) {
    return os << x.to_string();
  }

  static std::string int128_to_string(Int v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
    std::string s;
    while (u) {
      s += char('0' + (int)(u % 10));
      u /= 10;
    }
    if (neg) s += '-';
    return std::string(s.rbegin(), s.rend());
  }

 private:
  static Int abs128(Int v) { return v < 0 ? -v : v; }

  static Int gcd128(Int a, Int b) {
    a = abs128(a);
    b = abs128(b);
    while (b) {
      Int t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  static Int add_checked(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r))
      throw std::overflow_error("Rational: 128-bit addition overflow");
    return r;
  }
  static Int mul_checked(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r))
      throw std::overflow_error("Rational: 128-bit multiplication overflow");
    return r;
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    Int g = gcd128(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  Int num_;
  Int den_;
};

}  // namespace bfilab

#endif  // BFILAB_RATIONAL_HPP
