#ifndef NILGO_RATIONAL_HPP
#define NILGO_RATIONAL_HPP

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace nilgo {

/// Exact rational number backed by GMP. Always canonical: lowest terms,
/// denominator > 0. All arithmetic is exact; conversion to double is the
/// only lossy operation and is explicit.
class Rational {
public:
  Rational() { mpq_init(q_); }

  Rational(long num) : Rational() { mpq_set_si(q_, num, 1); }

  Rational(long num, long den) : Rational() {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    // The GMP denominator parameter is unsigned; normalize the sign first.
    if (den < 0) {
      num = -num;
      den = -den;
    }
    mpq_set_si(q_, num, static_cast<unsigned long>(den));
    mpq_canonicalize(q_);
  }

  Rational(const Rational& o) : Rational() { mpq_set(q_, o.q_); }
  Rational(Rational&& o) noexcept : Rational() { mpq_swap(q_, o.q_); }

  Rational& operator=(const Rational& o) {
    mpq_set(q_, o.q_);
    return *this;
  }
  Rational& operator=(Rational&& o) noexcept {
    mpq_swap(q_, o.q_);
    return *this;
  }

  ~Rational() { mpq_clear(q_); }

  /// Parses INT("/"POSINT)?. Throws std::invalid_argument on anything else,
  /// including floats, whitespace and empty strings.
  static Rational parse(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("Rational: empty string");
    std::string num, den = "1";
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
      num = std::string(s.substr(0, slash));
      den = std::string(s.substr(slash + 1));
      if (den.empty() || den[0] == '-' || den[0] == '+')
        throw std::invalid_argument("Rational: denominator must be a positive integer in '" +
                                    std::string(s) + "'");
    } else {
      num = std::string(s);
    }
    check_integer(num, /*allow_sign=*/true, s);
    check_integer(den, /*allow_sign=*/false, s);
    Rational r;
    if (mpz_set_str(mpq_numref(r.q_), num.c_str(), 10) != 0 ||
        mpz_set_str(mpq_denref(r.q_), den.c_str(), 10) != 0)
      throw std::invalid_argument("Rational: cannot parse '" + std::string(s) + "'");
    if (mpz_sgn(mpq_denref(r.q_)) == 0)
      throw std::invalid_argument("Rational: zero denominator in '" + std::string(s) + "'");
    mpq_canonicalize(r.q_);
    return r;
  }

  /// Canonical text form: "n" or "n/d" with d > 1.
  std::string str() const {
    char* c = mpq_get_str(nullptr, 10, q_);
    std::string s(c);
    void (*freefunc)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(c, s.size() + 1);
    return s;
  }

  double to_double() const { return mpq_get_d(q_); }

  int sign() const { return mpq_sgn(q_); }
  bool is_zero() const { return mpq_sgn(q_) == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    mpq_add(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    mpq_sub(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    mpq_mul(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    Rational r;
    mpq_div(r.q_, a.q_, b.q_);
    return r;
  }
  Rational operator-() const {
    Rational r;
    mpq_neg(r.q_, q_);
    return r;
  }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_, b.q_) != 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return mpq_cmp(a.q_, b.q_) < 0;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return mpq_cmp(a.q_, b.q_) <= 0;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

  /// Exact rational square root when one exists.
  bool sqrt_exact(Rational& out) const {
    if (sign() < 0) return false;
    Rational r;
    if (!mpz_perfect_square_p(mpq_numref(q_)) || !mpz_perfect_square_p(mpq_denref(q_)))
      return false;
    mpz_sqrt(mpq_numref(r.q_), mpq_numref(q_));
    mpz_sqrt(mpq_denref(r.q_), mpq_denref(q_));
    mpq_canonicalize(r.q_);
    out = r;
    return true;
  }

private:
  static void check_integer(const std::string& t, bool allow_sign, std::string_view whole) {
    std::size_t i = 0;
    if (allow_sign && i < t.size() && (t[i] == '-')) ++i;
    if (i == t.size())
      throw std::invalid_argument("Rational: cannot parse '" + std::string(whole) + "'");
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9')
        throw std::invalid_argument("Rational: cannot parse '" + std::string(whole) + "'");
  }

  mpq_t q_;
};

}  // namespace nilgo

#endif
