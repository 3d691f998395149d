#pragma once

#include "childstat/exact.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace childstat {

/// Dense univariate polynomial over the integers; coefficient i multiplies z^i.
class DensePolynomial {
 public:
  DensePolynomial() = default;
  explicit DensePolynomial(std::vector<ExactInt> coeffs) : coeffs_(std::move(coeffs)) {}
  DensePolynomial(std::initializer_list<long> coeffs);

  /// Zero polynomial of `size` explicit (zero) coefficients.
  static DensePolynomial zeros(std::size_t size) {
    return DensePolynomial(std::vector<ExactInt>(size, 0));
  }

  std::size_t size() const { return coeffs_.size(); }
  /// Degree of the highest nonzero term, -1 for the zero polynomial.
  long degree() const;
  bool is_zero() const { return degree() < 0; }

  /// Coefficient of z^i; zero past the stored range.
  ExactInt coeff(long i) const;
  const ExactInt& operator[](std::size_t i) const { return coeffs_[i]; }
  ExactInt& operator[](std::size_t i) { return coeffs_[i]; }

  std::span<const ExactInt> coeffs() const { return coeffs_; }

  /// Drops trailing zero coefficients.
  DensePolynomial& normalize();

  std::string to_string(char var = 'z') const;

  friend bool operator==(const DensePolynomial& a, const DensePolynomial& b);

 private:
  std::vector<ExactInt> coeffs_;
};

/// a*b with terms of degree > max_deg dropped. Output coefficients are
/// computed in parallel (OpenMP).
DensePolynomial poly_mul_trunc(const DensePolynomial& a, const DensePolynomial& b,
                               std::size_t max_deg);

/// Single-threaded reference for poly_mul_trunc.
DensePolynomial poly_mul_trunc_serial(const DensePolynomial& a, const DensePolynomial& b,
                                      std::size_t max_deg);

enum class PowerStrategy {
  // c_j = (1/j) sum_{k>=1} a_k ((m+1)k - j) c_{j-k}, from phi (phi^m)' = m phi' phi^m.
  CoefficientRecurrence,
  // Repeated squaring with truncation.
  BinaryExponentiation,
};

/// Coefficients c_0..c_max_deg of phi^m. The recurrence strategy requires
/// phi(0) = 1 (NonUnitConstantTerm otherwise) and asserts every division is
/// exact.
DensePolynomial poly_pow_coeffs(const DensePolynomial& phi, unsigned long m,
                                std::size_t max_deg,
                                PowerStrategy strategy = PowerStrategy::CoefficientRecurrence);

/// Single coefficient [z^j] phi^m; zero when j < 0.
ExactInt power_coefficient(const DensePolynomial& phi, unsigned long m, long j);

}  // namespace childstat
