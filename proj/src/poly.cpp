#include "childstat/poly.hpp"
#include "childstat/error.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace childstat {

DensePolynomial::DensePolynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
}

long DensePolynomial::degree() const {
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] != 0) return static_cast<long>(i);
  }
  return -1;
}

ExactInt DensePolynomial::coeff(long i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= coeffs_.size()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

DensePolynomial& DensePolynomial::normalize() {
  coeffs_.resize(static_cast<std::size_t>(degree() + 1));
  return *this;
}

std::string DensePolynomial::to_string(char var) const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const ExactInt& c = coeffs_[i];
    if (c == 0) continue;
    ExactInt mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) out << mag.get_str();
    if (i > 0) {
      if (mag != 1) out << "*";
      out << var;
      if (i > 1) out << "^" << i;
    }
  }
  if (first) out << "0";
  return out.str();
}

bool operator==(const DensePolynomial& a, const DensePolynomial& b) {
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeff(static_cast<long>(i)) != b.coeff(static_cast<long>(i))) return false;
  }
  return true;
}

namespace {

std::size_t product_size(const DensePolynomial& a, const DensePolynomial& b,
                         std::size_t max_deg) {
  if (a.size() == 0 || b.size() == 0) return 0;
  return std::min(max_deg + 1, a.size() + b.size() - 1);
}

void mul_coefficient(const DensePolynomial& a, const DensePolynomial& b, std::size_t k,
                     ExactInt& out) {
  std::size_t lo = k >= b.size() ? k - b.size() + 1 : 0;
  std::size_t hi = std::min(k, a.size() - 1);
  for (std::size_t i = lo; i <= hi; ++i) {
    if (a[i] == 0) continue;
    mpz_addmul(out.get_mpz_t(), a[i].get_mpz_t(), b[k - i].get_mpz_t());
  }
}

}  // namespace

DensePolynomial poly_mul_trunc_serial(const DensePolynomial& a, const DensePolynomial& b,
                                      std::size_t max_deg) {
  std::size_t size = product_size(a, b, max_deg);
  DensePolynomial out = DensePolynomial::zeros(size);
  for (std::size_t k = 0; k < size; ++k) mul_coefficient(a, b, k, out[k]);
  return out;
}

DensePolynomial poly_mul_trunc(const DensePolynomial& a, const DensePolynomial& b,
                               std::size_t max_deg) {
  std::size_t size = product_size(a, b, max_deg);
  DensePolynomial out = DensePolynomial::zeros(size);
  const long n = static_cast<long>(size);
#pragma omp parallel for schedule(dynamic, 16)
  for (long k = 0; k < n; ++k) {
    mul_coefficient(a, b, static_cast<std::size_t>(k), out[static_cast<std::size_t>(k)]);
  }
  return out;
}

namespace {

DensePolynomial pow_by_recurrence(const DensePolynomial& phi, unsigned long m,
                                  std::size_t max_deg) {
  if (phi.coeff(0) != 1) {
    throw Error(ErrorCode::NonUnitConstantTerm,
                "coefficient recurrence requires phi(0) = 1, got " + phi.coeff(0).get_str());
  }
  std::vector<std::size_t> support;
  for (std::size_t k = 1; k < phi.size(); ++k) {
    if (phi[k] != 0) support.push_back(k);
  }
  DensePolynomial c = DensePolynomial::zeros(max_deg + 1);
  c[0] = 1;
  const ExactInt m1 = ExactInt(m) + 1;
  ExactInt acc, weight;
  for (std::size_t j = 1; j <= max_deg; ++j) {
    acc = 0;
    for (std::size_t k : support) {
      if (k > j) break;
      // a_k ((m+1)k - j) c_{j-k}
      weight = m1 * k;
      weight -= j;
      weight *= phi[k];
      mpz_addmul(acc.get_mpz_t(), weight.get_mpz_t(), c[j - k].get_mpz_t());
    }
    if (!mpz_divisible_ui_p(acc.get_mpz_t(), j)) {
      throw std::logic_error("poly_pow_coeffs: non-integral coefficient at degree " +
                             std::to_string(j));
    }
    mpz_divexact_ui(c[j].get_mpz_t(), acc.get_mpz_t(), j);
  }
  return c;
}

DensePolynomial pow_by_squaring(const DensePolynomial& phi, unsigned long m,
                                std::size_t max_deg) {
  DensePolynomial result({1});
  DensePolynomial base = phi;
  while (m > 0) {
    if (m & 1UL) result = poly_mul_trunc(result, base, max_deg);
    m >>= 1;
    if (m > 0) base = poly_mul_trunc(base, base, max_deg);
  }
  DensePolynomial out = DensePolynomial::zeros(max_deg + 1);
  for (std::size_t i = 0; i < std::min(result.size(), out.size()); ++i) out[i] = result[i];
  return out;
}

}  // namespace

DensePolynomial poly_pow_coeffs(const DensePolynomial& phi, unsigned long m,
                                std::size_t max_deg, PowerStrategy strategy) {
  switch (strategy) {
    case PowerStrategy::CoefficientRecurrence:
      return pow_by_recurrence(phi, m, max_deg);
    case PowerStrategy::BinaryExponentiation:
      return pow_by_squaring(phi, m, max_deg);
  }
  throw std::invalid_argument("poly_pow_coeffs: unknown strategy");
}

ExactInt power_coefficient(const DensePolynomial& phi, unsigned long m, long j) {
  if (j < 0) return 0;
  return poly_pow_coeffs(phi, m, static_cast<std::size_t>(j))[static_cast<std::size_t>(j)];
}

}  // namespace childstat
