#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace strat {

enum class ErrorCode {
  SHAPE_MISMATCH,
  ATLAS_MISMATCH,
  NOT_OPEN,
  NOT_CLOSED,
  NOT_AFFINE,
  BAD_ORDER,
  NONCOMPACT_KERNEL,
  T_EXACTNESS_FAILS,
  TRUNCATION_ASSERT_FAILED,
  HYPOTHESES_FAIL,
  CATEGORY_MISMATCH,
  MISSING_STALK_DATA,
  TORSION_NOT_INVERTIBLE,
  NOT_A_FIELD,
  UNSUPPORTED_MODULE,
  PARSE_ERROR,
  VALIDATION_ERROR,
  INTERNAL,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

using Scalar = mpq_class;

/// Coefficient ring Lambda: Z, Q or F_p with p prime. All arithmetic is
/// exact; F_p elements are kept as canonical representatives 0..p-1 with
/// denominator 1.
class Ring {
 public:
  enum class Kind { Integers, Rationals, PrimeField };

  static Ring Z() { return Ring(Kind::Integers, 0); }
  static Ring Q() { return Ring(Kind::Rationals, 0); }
  static Ring Fp(unsigned long p);

  static Ring parse(const std::string& spec);  // "Z", "Q", "Fp:5"

  Kind kind() const { return kind_; }
  unsigned long p() const { return p_; }
  bool is_field() const { return kind_ != Kind::Integers; }
  std::string name() const;

  bool operator==(const Ring& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const Ring& o) const { return !(*this == o); }

  /// Canonical form: reduced fraction over Q, integer over Z, rep 0..p-1 over F_p.
  Scalar normalize(const Scalar& x) const;

  Scalar add(const Scalar& a, const Scalar& b) const { return normalize(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return normalize(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return normalize(a * b); }
  Scalar neg(const Scalar& a) const { return normalize(-a); }

  bool is_zero(const Scalar& a) const { return normalize(a) == 0; }
  bool is_unit(const Scalar& a) const;

  /// Multiplicative inverse of a unit.
  Scalar inv(const Scalar& a) const;

  /// Exact division; over Z requires divisibility.
  Scalar div_exact(const Scalar& a, const Scalar& b) const;

  /// True if b divides a in the ring (over fields: b != 0 or a == 0).
  bool divides(const Scalar& b, const Scalar& a) const;

  /// gcd normal form representative (nonneg over Z, 1 over fields for nonzero).
  Scalar gcd(const Scalar& a, const Scalar& b) const;

 private:
  Ring(Kind k, unsigned long p) : kind_(k), p_(p) {}
  Kind kind_;
  unsigned long p_;
};

bool is_prime(unsigned long n);

}  // namespace strat
