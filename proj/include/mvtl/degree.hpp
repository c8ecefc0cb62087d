#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace mvtl {

/// Exact signed rational used for weights and intermediate sums.
using rational = boost::rational<std::int64_t>;

inline std::string to_string(const rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Parses "k", "k/m", or a decimal "d.ddd", with an optional sign.
/// Returns nullopt for anything else, including a zero denominator.
inline std::optional<rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  auto digits = [](std::string_view s, std::int64_t& out) {
    if (s.empty() || s.size() > 17) return false;
    out = 0;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
      out = out * 10 + (c - '0');
    }
    return true;
  };
  std::int64_t num = 0, den = 1;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    if (!digits(text.substr(0, slash), num) || !digits(text.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::int64_t whole = 0, frac = 0;
    auto frac_text = text.substr(dot + 1);
    if (!digits(text.substr(0, dot), whole) || !digits(frac_text, frac)) return std::nullopt;
    if (frac_text.size() > 15) return std::nullopt;
    for (std::size_t i = 0; i < frac_text.size(); ++i) den *= 10;
    if (whole > std::numeric_limits<std::int64_t>::max() / den - 1) return std::nullopt;
    num = whole * den + frac;
  } else if (!digits(text, num)) {
    return std::nullopt;
  }
  rational r(num, den);
  return negative ? -r : r;
}

/// A truth degree: an exact rational in [0,1], kept in lowest terms.
class degree {
 public:
  constexpr degree() = default;

  degree(std::int64_t num, std::int64_t den) : degree(rational(num, den)) {}

  explicit degree(const rational& r) : value_(r) {
    if (r < 0 || r > 1) throw std::out_of_range("degree " + mvtl::to_string(r) + " outside [0,1]");
  }

  static degree zero() { return degree(); }
  static degree one() { return degree(1, 1); }

  static std::optional<degree> try_make(const rational& r) {
    if (r < 0 || r > 1) return std::nullopt;
    return degree(r);
  }

  /// Degree text: "k/m", "0.d...", "0" or "1".
  static std::optional<degree> parse(std::string_view text) {
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) return std::nullopt;
    auto r = parse_rational(text);
    if (!r) return std::nullopt;
    return try_make(*r);
  }

  const rational& value() const noexcept { return value_; }
  std::int64_t numerator() const noexcept { return value_.numerator(); }
  std::int64_t denominator() const noexcept { return value_.denominator(); }

  bool is_zero() const noexcept { return value_.numerator() == 0; }
  bool is_one() const noexcept { return value_ == rational(1); }

  degree complement() const { return degree(rational(1) - value_); }

  std::string str() const { return mvtl::to_string(value_); }

  friend bool operator==(const degree& a, const degree& b) { return a.value_ == b.value_; }
  friend bool operator<(const degree& a, const degree& b) { return a.value_ < b.value_; }
  friend bool operator>(const degree& a, const degree& b) { return b < a; }
  friend bool operator<=(const degree& a, const degree& b) { return !(b < a); }
  friend bool operator>=(const degree& a, const degree& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const degree& d) { return os << d.str(); }

 private:
  rational value_{0};
};

inline std::string to_string(const degree& d) { return d.str(); }

/// The finite truth space {0, 1/n, ..., n/n}.
class scale {
 public:
  explicit scale(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("scale needs n >= 1");
  }

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_) + 1; }

  degree at(int k) const { return degree(k, n_); }

  std::vector<degree> members() const {
    std::vector<degree> out;
    out.reserve(size());
    for (int k = 0; k <= n_; ++k) out.push_back(at(k));
    return out;
  }

  bool contains(const degree& d) const { return (d.value() * n_).denominator() == 1; }

  /// Index k such that at(k) == d; d must be a member.
  int index_of(const degree& d) const {
    auto scaled = d.value() * n_;
    return static_cast<int>(scaled.numerator() / scaled.denominator());
  }

  /// Clamps x into [0,1] and rounds to the nearest member, ties toward the lower one.
  degree round(const rational& x) const {
    if (x <= 0) return degree::zero();
    if (x >= 1) return degree::one();
    // smallest k with k >= x*n - 1/2
    rational target = x * n_ - rational(1, 2);
    std::int64_t k = target.numerator() / target.denominator();
    if (rational(k) < target) ++k;
    if (k < 0) k = 0;
    return degree(k, n_);
  }

  friend bool operator==(const scale&, const scale&) = default;

 private:
  int n_;
};

}  // namespace mvtl
