#pragma once

// Exact rationals for interval coordinates.
//
// Values are kept in lowest terms with a positive denominator. When the
// denominator is a power of two the exponent is cached, and sums, products,
// midpoints and comparisons of two such values avoid the gcd entirely:
// almost every coordinate the library touches is dyadic.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "thompson/error.hpp"

namespace thompson {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

inline bool is_power_of_two(const BigInt& v) { return v.sign() > 0 && boost::multiprecision::lsb(v) == boost::multiprecision::msb(v); }

/// p / 2^q with q = 0 or p odd; zero is (0, 0).
struct DyadicForm {
  BigInt p;
  std::uint32_t q = 0;

  friend bool operator==(const DyadicForm&, const DyadicForm&) = default;
};

class ExactNumber {
 public:
  /// Largest exponent accepted by the caret form "p/2^q".
  static constexpr std::uint32_t max_parse_exponent = 1u << 16;

  ExactNumber() : num_(0), den_(1), exp_(0) {}
  ExactNumber(long long value) : num_(value), den_(1), exp_(0) {}  // NOLINT: implicit by design of literals
  ExactNumber(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  /// p / 2^q, reduced.
  static ExactNumber dyadic(BigInt p, std::uint32_t q) {
    ExactNumber r;
    r.num_ = std::move(p);
    r.den_ = BigInt(1) << q;
    r.exp_ = static_cast<int>(q);
    r.reduce_dyadic();
    return r;
  }

  const BigInt& numerator() const noexcept { return num_; }
  const BigInt& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_dyadic() const noexcept { return exp_ >= 0; }
  /// Exponent q with denominator 2^q, or -1 when the denominator is not a power of two.
  int dyadic_exponent() const noexcept { return exp_; }
  int sign() const noexcept { return num_.sign(); }

  std::optional<DyadicForm> as_dyadic() const {
    if (num_.sign() < 0) throw Error(ErrorKind::out_of_range, "as_dyadic of negative value " + str());
    if (exp_ < 0) return std::nullopt;
    return DyadicForm{num_, static_cast<std::uint32_t>(exp_)};
  }

  /// "p/q" in lowest terms; integers print without a denominator.
  std::string str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
  }

  friend ExactNumber operator+(const ExactNumber& a, const ExactNumber& b) {
    if (a.exp_ >= 0 && b.exp_ >= 0) {
      const int q = std::max(a.exp_, b.exp_);
      BigInt n = (a.num_ << static_cast<unsigned>(q - a.exp_)) + (b.num_ << static_cast<unsigned>(q - b.exp_));
      return from_dyadic_parts(std::move(n), q);
    }
    return ExactNumber(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }

  friend ExactNumber operator-(const ExactNumber& a) {
    ExactNumber r = a;
    r.num_ = -r.num_;
    return r;
  }

  friend ExactNumber operator-(const ExactNumber& a, const ExactNumber& b) {
    if (a.exp_ >= 0 && b.exp_ >= 0) {
      const int q = std::max(a.exp_, b.exp_);
      BigInt n = (a.num_ << static_cast<unsigned>(q - a.exp_)) - (b.num_ << static_cast<unsigned>(q - b.exp_));
      return from_dyadic_parts(std::move(n), q);
    }
    return ExactNumber(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }

  friend ExactNumber operator*(const ExactNumber& a, const ExactNumber& b) {
    if (a.exp_ >= 0 && b.exp_ >= 0) return from_dyadic_parts(a.num_ * b.num_, a.exp_ + b.exp_);
    return ExactNumber(a.num_ * b.num_, a.den_ * b.den_);
  }

  friend ExactNumber operator/(const ExactNumber& a, const ExactNumber& b) {
    if (b.is_zero()) throw Error(ErrorKind::division_by_zero, a.str() + " / 0");
    return ExactNumber(a.num_ * b.den_, a.den_ * b.num_);
  }

  ExactNumber& operator+=(const ExactNumber& o) { return *this = *this + o; }
  ExactNumber& operator-=(const ExactNumber& o) { return *this = *this - o; }
  ExactNumber& operator*=(const ExactNumber& o) { return *this = *this * o; }
  ExactNumber& operator/=(const ExactNumber& o) { return *this = *this / o; }

  /// Exact 2^k for any integer k.
  static ExactNumber pow2(int k) {
    if (k >= 0) return ExactNumber(BigInt(1) << static_cast<unsigned>(k), BigInt(1));
    return dyadic(BigInt(1), static_cast<std::uint32_t>(-k));
  }

  /// k when the value is exactly 2^k.
  std::optional<int> log2_exact() const {
    if (num_.sign() <= 0) return std::nullopt;
    const bool num_pow2 = is_power_of_two(num_);
    if (!num_pow2 || exp_ < 0) return std::nullopt;
    if (num_ == 1) return -exp_;
    if (exp_ != 0) return std::nullopt;
    return static_cast<int>(boost::multiprecision::msb(num_));
  }

  friend bool operator==(const ExactNumber& a, const ExactNumber& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  friend std::strong_ordering operator<=>(const ExactNumber& a, const ExactNumber& b) {
    if (a.den_ == b.den_) return cmp(a.num_, b.num_);
    if (a.exp_ >= 0 && b.exp_ >= 0) {
      const int q = std::max(a.exp_, b.exp_);
      return cmp(a.num_ << static_cast<unsigned>(q - a.exp_), b.num_ << static_cast<unsigned>(q - b.exp_));
    }
    return cmp(a.num_ * b.den_, b.num_ * a.den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const ExactNumber& x) { return os << x.str(); }

  std::size_t hash() const noexcept {
    std::size_t h = std::hash<std::string>{}(str());
    return h;
  }

 private:
  static std::strong_ordering cmp(const BigInt& a, const BigInt& b) {
    const int c = a.compare(b);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  static ExactNumber from_dyadic_parts(BigInt n, int q) {
    ExactNumber r;
    r.num_ = std::move(n);
    r.exp_ = q;
    r.reduce_dyadic();
    return r;
  }

  // Assumes exp_ >= 0 holds the exponent and num_ is the unreduced numerator.
  void reduce_dyadic() {
    if (num_.is_zero()) {
      den_ = 1;
      exp_ = 0;
      return;
    }
    const auto tz = static_cast<int>(boost::multiprecision::lsb(boost::multiprecision::abs(num_)));
    const int k = std::min(tz, exp_);
    if (k > 0) {
      num_ >>= static_cast<unsigned>(k);
      exp_ -= k;
    }
    den_ = BigInt(1) << static_cast<unsigned>(exp_);
  }

  void normalize() {
    if (den_.is_zero()) throw Error(ErrorKind::division_by_zero, "zero denominator");
    if (den_.sign() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_.is_zero()) {
      den_ = 1;
      exp_ = 0;
      return;
    }
    BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
    if (is_power_of_two(den_)) {
      exp_ = static_cast<int>(boost::multiprecision::msb(den_));
    } else {
      exp_ = -1;
    }
  }

  BigInt num_;
  BigInt den_;
  int exp_ = 0;
};

inline ExactNumber min(const ExactNumber& a, const ExactNumber& b) { return b < a ? b : a; }
inline ExactNumber max(const ExactNumber& a, const ExactNumber& b) { return a < b ? b : a; }

inline ExactNumber midpoint(const ExactNumber& a, const ExactNumber& b) {
  return (a + b) * ExactNumber::dyadic(BigInt(1), 1);
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

inline BigInt parse_int(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw Error(ErrorKind::malformed_number, "bad integer in \"" + std::string(whole) + "\"");
  BigInt v{std::string(s)};
  return negative ? BigInt(-v) : v;
}

}  // namespace detail

/// Grammar: INT | INT "/" INT | INT "/2^" INT, INT = ["-"] digits.
inline ExactNumber parse_number(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return ExactNumber(detail::parse_int(text, text), BigInt(1));
  const std::string_view head = text.substr(0, slash);
  const std::string_view tail = text.substr(slash + 1);
  BigInt num = detail::parse_int(head, text);
  if (tail.size() >= 2 && tail.substr(0, 2) == "2^") {
    const std::string_view exp_text = tail.substr(2);
    if (!detail::all_digits(exp_text) || exp_text.size() > 6) {
      throw Error(ErrorKind::malformed_number, "bad exponent in \"" + std::string(text) + "\"");
    }
    const auto q = static_cast<std::uint32_t>(std::stoul(std::string(exp_text)));
    if (q > ExactNumber::max_parse_exponent) {
      throw Error(ErrorKind::malformed_number, "exponent too large in \"" + std::string(text) + "\"");
    }
    return ExactNumber::dyadic(std::move(num), q);
  }
  if (!detail::all_digits(tail)) throw Error(ErrorKind::malformed_number, "bad denominator in \"" + std::string(text) + "\"");
  BigInt den(std::string{tail});
  if (den.is_zero()) throw Error(ErrorKind::malformed_number, "zero denominator in \"" + std::string(text) + "\"");
  return ExactNumber(std::move(num), std::move(den));
}

inline bool in_unit_interval(const ExactNumber& x) { return x.sign() >= 0 && x <= ExactNumber(1); }

/// parse_number restricted to [0,1].
inline ExactNumber parse_coordinate(std::string_view text) {
  ExactNumber x = parse_number(text);
  if (!in_unit_interval(x)) throw Error(ErrorKind::out_of_range, std::string(text) + " is outside [0,1]");
  return x;
}

inline std::string format(const ExactNumber& x) { return x.str(); }

}  // namespace thompson

template <>
struct std::hash<thompson::ExactNumber> {
  std::size_t operator()(const thompson::ExactNumber& x) const noexcept { return x.hash(); }
};
