#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace childstat {

using ExactInt = mpz_class;
using ExactRat = mpq_class;

/// Builds num/den in lowest terms with a positive denominator.
ExactRat make_rational(const ExactInt& num, const ExactInt& den);

/// Stirling number of the second kind S(p, k).
ExactInt stirling2(unsigned p, unsigned k);

/// n (n-1) ... (n-k+1); the empty product is 1.
ExactInt falling_factorial(const ExactInt& n, unsigned k);

ExactInt binomial(unsigned n, unsigned k);

/// Exact integer n divided by d; throws std::logic_error unless d | n.
ExactInt divide_exact(const ExactInt& n, const ExactInt& d, const char* what);

/// "p/q", or "p" when q = 1.
std::string to_fraction_string(const ExactRat& q);

/// value rounded half-to-even to `digits` places after the decimal point.
std::string render_decimal(const ExactRat& value, unsigned digits);

/// sign * sqrt(square), correctly rounded half-to-even to `digits` places.
/// `square` must be nonnegative; `sign` is -1, 0 or +1.
std::string render_signed_sqrt(const ExactRat& square, int sign, unsigned digits);

/// True when q is the square of a rational; stores the root in *root.
bool rational_sqrt(const ExactRat& q, ExactRat* root);

/// Exact real of the form coeff * sqrt(radicand) with rational coeff and
/// positive rational radicand. Every scaled moment, normal reference value
/// and their difference lives in such a field for a fixed pair of variances.
class Surd {
 public:
  Surd() : coeff_(0), radicand_(1) {}
  explicit Surd(ExactRat value) : coeff_(std::move(value)), radicand_(1) {}
  Surd(ExactRat coeff, ExactRat radicand);

  const ExactRat& coeff() const { return coeff_; }
  const ExactRat& radicand() const { return radicand_; }

  int sign() const { return sgn(coeff_); }
  bool is_zero() const { return sgn(coeff_) == 0; }
  /// coeff^2 * radicand.
  ExactRat square() const { return coeff_ * coeff_ * radicand_; }
  /// True when radicand is 1, i.e. the value is the rational coeff().
  bool is_rational() const { return radicand_ == 1; }

  std::string render(unsigned digits) const;

  /// Sum/difference; both operands must share the radicand unless one is zero.
  friend Surd operator+(const Surd& a, const Surd& b);
  friend Surd operator-(const Surd& a, const Surd& b);
  friend bool operator==(const Surd& a, const Surd& b) {
    return a.coeff_ == b.coeff_ && (a.is_zero() || a.radicand_ == b.radicand_);
  }

 private:
  ExactRat coeff_;
  ExactRat radicand_;
};

}  // namespace childstat
