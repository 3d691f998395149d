#include "childstat/exact.hpp"
#include "childstat/error.hpp"

#include <stdexcept>
#include <vector>

namespace childstat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidChildSet: return "InvalidChildSet";
    case ErrorCode::InvalidQuery: return "InvalidQuery";
    case ErrorCode::NoTrees: return "NoTrees";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorCode::InvalidCorrelation: return "InvalidCorrelation";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::LeadingCoefficientZero: return "LeadingCoefficientZero";
  }
  return "Unknown";
}

ExactRat make_rational(const ExactInt& num, const ExactInt& den) {
  if (den == 0) throw std::domain_error("make_rational: zero denominator");
  ExactRat q(num, den);
  q.canonicalize();
  return q;
}

ExactInt stirling2(unsigned p, unsigned k) {
  if (k > p) return 0;
  if (p == 0) return 1;
  if (k == 0) return 0;
  // Row-by-row triangle S(i, j) = j S(i-1, j) + S(i-1, j-1).
  std::vector<ExactInt> row(k + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= p; ++i) {
    unsigned top = std::min(i, k);
    for (unsigned j = top; j >= 1; --j) row[j] = j * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[k];
}

ExactInt falling_factorial(const ExactInt& n, unsigned k) {
  ExactInt out = 1;
  for (unsigned i = 0; i < k; ++i) {
    ExactInt factor = n - i;
    if (factor == 0) return 0;
    out *= factor;
  }
  return out;
}

ExactInt binomial(unsigned n, unsigned k) {
  ExactInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

ExactInt divide_exact(const ExactInt& n, const ExactInt& d, const char* what) {
  if (d == 0 || !mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
    throw std::logic_error(std::string("non-integral quotient in ") + what);
  }
  ExactInt q;
  mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

std::string to_fraction_string(const ExactRat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

ExactInt pow10(unsigned e) {
  ExactInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, e);
  return out;
}

// Formats |scaled| / 10^digits with the given sign.
std::string format_scaled(const ExactInt& scaled, int sign, unsigned digits) {
  std::string body = scaled.get_str();
  if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
  if (digits > 0) body.insert(body.size() - digits, ".");
  if (sign < 0 && scaled != 0) body.insert(0, "-");
  return body;
}

}  // namespace

std::string render_decimal(const ExactRat& value, unsigned digits) {
  ExactInt num = abs(value.get_num()) * pow10(digits);
  const ExactInt& den = value.get_den();
  ExactInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  int cmp_half = cmp(2 * r, den);
  if (cmp_half > 0 || (cmp_half == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
  return format_scaled(q, sgn(value), digits);
}

std::string render_signed_sqrt(const ExactRat& square, int sign, unsigned digits) {
  if (sgn(square) < 0) throw std::domain_error("render_signed_sqrt: negative square");
  const ExactInt& a = square.get_num();
  const ExactInt& b = square.get_den();
  ExactInt scale = pow10(2 * digits);
  // floor(sqrt(floor(t))) == floor(sqrt(t)) for real t >= 0.
  ExactInt t = a * scale / b;
  ExactInt root;
  mpz_sqrt(root.get_mpz_t(), t.get_mpz_t());
  // Round up iff sqrt(a/b) 10^d > root + 1/2, i.e. 4 a 10^{2d} > (2 root + 1)^2 b.
  ExactInt lhs = 4 * a * scale;
  ExactInt mid = 2 * root + 1;
  ExactInt rhs = mid * mid * b;
  int c = cmp(lhs, rhs);
  if (c > 0 || (c == 0 && mpz_odd_p(root.get_mpz_t()))) root += 1;
  return format_scaled(root, sign, digits);
}

bool rational_sqrt(const ExactRat& q, ExactRat* root) {
  if (sgn(q) < 0) return false;
  if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) ||
      !mpz_perfect_square_p(q.get_den().get_mpz_t())) {
    return false;
  }
  if (root != nullptr) {
    ExactInt n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
    *root = make_rational(n, d);
  }
  return true;
}

Surd::Surd(ExactRat coeff, ExactRat radicand)
    : coeff_(std::move(coeff)), radicand_(std::move(radicand)) {
  if (sgn(radicand_) <= 0) throw std::domain_error("Surd: radicand must be positive");
  ExactRat root;
  if (rational_sqrt(radicand_, &root)) {
    coeff_ *= root;
    radicand_ = 1;
  }
}

std::string Surd::render(unsigned digits) const {
  if (is_rational()) return render_decimal(coeff_, digits);
  return render_signed_sqrt(square(), sign(), digits);
}

namespace {

const ExactRat& shared_radicand(const Surd& a, const Surd& b) {
  if (a.is_zero()) return b.radicand();
  if (b.is_zero() || a.radicand() == b.radicand()) return a.radicand();
  throw std::logic_error("Surd: mismatched radicands");
}

}  // namespace

Surd operator+(const Surd& a, const Surd& b) {
  return Surd(a.coeff() + b.coeff(), shared_radicand(a, b));
}

Surd operator-(const Surd& a, const Surd& b) {
  return Surd(a.coeff() - b.coeff(), shared_radicand(a, b));
}

}  // namespace childstat
