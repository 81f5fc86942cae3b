#include "strat/ring.hpp"

namespace strat {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::SHAPE_MISMATCH: return "SHAPE_MISMATCH";
    case ErrorCode::ATLAS_MISMATCH: return "ATLAS_MISMATCH";
    case ErrorCode::NOT_OPEN: return "NOT_OPEN";
    case ErrorCode::NOT_CLOSED: return "NOT_CLOSED";
    case ErrorCode::NOT_AFFINE: return "NOT_AFFINE";
    case ErrorCode::BAD_ORDER: return "BAD_ORDER";
    case ErrorCode::NONCOMPACT_KERNEL: return "NONCOMPACT_KERNEL";
    case ErrorCode::T_EXACTNESS_FAILS: return "T_EXACTNESS_FAILS";
    case ErrorCode::TRUNCATION_ASSERT_FAILED: return "TRUNCATION_ASSERT_FAILED";
    case ErrorCode::HYPOTHESES_FAIL: return "HYPOTHESES_FAIL";
    case ErrorCode::CATEGORY_MISMATCH: return "CATEGORY_MISMATCH";
    case ErrorCode::MISSING_STALK_DATA: return "MISSING_STALK_DATA";
    case ErrorCode::TORSION_NOT_INVERTIBLE: return "TORSION_NOT_INVERTIBLE";
    case ErrorCode::NOT_A_FIELD: return "NOT_A_FIELD";
    case ErrorCode::UNSUPPORTED_MODULE: return "UNSUPPORTED_MODULE";
    case ErrorCode::PARSE_ERROR: return "PARSE_ERROR";
    case ErrorCode::VALIDATION_ERROR: return "VALIDATION_ERROR";
    case ErrorCode::INTERNAL: return "INTERNAL";
  }
  return "UNKNOWN";
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Ring Ring::Fp(unsigned long p) {
  if (!is_prime(p)) throw Error(ErrorCode::VALIDATION_ERROR, "Fp modulus must be prime, got " + std::to_string(p));
  return Ring(Kind::PrimeField, p);
}

Ring Ring::parse(const std::string& spec) {
  if (spec == "Z") return Z();
  if (spec == "Q") return Q();
  if (spec.rfind("Fp:", 0) == 0) {
    unsigned long p = std::stoul(spec.substr(3));
    return Fp(p);
  }
  if (spec.rfind("F", 0) == 0 && spec.size() > 1) {
    // accept "F2", "F5" as a convenience
    unsigned long p = std::stoul(spec.substr(1));
    return Fp(p);
  }
  throw Error(ErrorCode::PARSE_ERROR, "unknown ring '" + spec + "' (expected Z, Q, or Fp:<p>)");
}

std::string Ring::name() const {
  switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::PrimeField: return "Fp:" + std::to_string(p_);
  }
  return "?";
}

Scalar Ring::normalize(const Scalar& x) const {
  Scalar y = x;
  y.canonicalize();
  switch (kind_) {
    case Kind::Rationals:
      return y;
    case Kind::Integers:
      if (y.get_den() != 1) throw Error(ErrorCode::INTERNAL, "non-integral scalar over Z");
      return y;
    case Kind::PrimeField: {
      if (y == 0) return y;
      mpz_class num = y.get_num(), den = y.get_den(), p(p_);
      mpz_class dinv;
      if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
        throw Error(ErrorCode::INTERNAL, "denominator not invertible mod p");
      mpz_class r = (num * dinv) % p;
      if (r < 0) r += p;
      return Scalar(r);
    }
  }
  return y;
}

bool Ring::is_unit(const Scalar& a) const {
  Scalar x = normalize(a);
  if (kind_ == Kind::Integers) return x == 1 || x == -1;
  return x != 0;
}

Scalar Ring::inv(const Scalar& a) const {
  Scalar x = normalize(a);
  if (!is_unit(x)) throw Error(ErrorCode::INTERNAL, "inverse of non-unit");
  if (kind_ == Kind::PrimeField) {
    mpz_class num = x.get_num(), p(p_), r;
    mpz_invert(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    return normalize(Scalar(r));
  }
  return normalize(Scalar(1) / x);
}

Scalar Ring::div_exact(const Scalar& a, const Scalar& b) const {
  Scalar x = normalize(a), y = normalize(b);
  if (is_zero(y)) throw Error(ErrorCode::INTERNAL, "division by zero");
  if (kind_ == Kind::PrimeField) return mul(x, inv(y));
  Scalar q = x / y;
  q.canonicalize();
  if (kind_ == Kind::Integers && q.get_den() != 1)
    throw Error(ErrorCode::INTERNAL, "inexact division over Z");
  return q;
}

bool Ring::divides(const Scalar& b, const Scalar& a) const {
  Scalar x = normalize(a), y = normalize(b);
  if (is_zero(x)) return true;
  if (is_zero(y)) return false;
  if (kind_ != Kind::Integers) return true;
  Scalar q = x / y;
  q.canonicalize();
  return q.get_den() == 1;
}

Scalar Ring::gcd(const Scalar& a, const Scalar& b) const {
  Scalar x = normalize(a), y = normalize(b);
  if (kind_ != Kind::Integers) {
    if (is_zero(x) && is_zero(y)) return Scalar(0);
    return Scalar(1);
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), x.get_num().get_mpz_t(), y.get_num().get_mpz_t());
  return Scalar(g);
}

}  // namespace strat
