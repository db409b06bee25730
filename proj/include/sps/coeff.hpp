#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sps {

/// Generic error type for everything in this library.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

enum class CoeffCase { A, B };

/// A coefficient value. Case A: an element of F_{p^m}, packed in base p
/// (value = sum c_i p^i with 0 <= c_i < p). Case B: a residue mod p^N.
struct Scalar {
  std::uint64_t v = 0;
  friend bool operator==(Scalar a, Scalar b) { return a.v == b.v; }
  friend bool operator!=(Scalar a, Scalar b) { return a.v != b.v; }
};

/// A scalar constrained to the multiplicative section iota(k) plus zero.
/// Case A: every field element qualifies. Case B: Teichmuller values.
struct Digit {
  std::uint64_t v = 0;
  friend bool operator==(Digit a, Digit b) { return a.v == b.v; }
  friend bool operator!=(Digit a, Digit b) { return a.v != b.v; }
};

/// Coefficient arithmetic for the two base rings: a finite field F_{p^m}
/// (case A) and Z_p truncated at precision p^N (case B).
///
/// All values are immutable and all member functions are pure, so a domain
/// may be shared freely between threads.
class CoefficientDomain {
public:
  /// Case A. For m > 1 a monic irreducible of degree m over F_p is used;
  /// pass coefficients c_0..c_m, or leave empty to use a built-in default
  /// (available whenever p^m <= 64).
  static CoefficientDomain finite_field(std::uint64_t p, unsigned m = 1,
                                        std::vector<std::uint64_t> irreducible = {});

  /// Case B: integers mod p^precision with the Teichmuller digit section.
  static CoefficientDomain zp(std::uint64_t p, unsigned precision);

  CoeffCase coeff_case() const { return case_; }
  std::uint64_t p() const { return p_; }
  unsigned ext_degree() const { return m_; }
  unsigned precision() const { return precision_; }
  std::uint64_t modulus() const { return pN_; }  // p^N (case B); p^m carrier size is separate
  std::uint64_t residue_field_size() const { return q_; }
  const std::vector<std::uint64_t>& irreducible() const { return irred_; }

  bool same_as(const CoefficientDomain& o) const;

  // -- scalar arithmetic --------------------------------------------------
  Scalar from_int(long long c) const;
  Scalar scalar_add(Scalar a, Scalar b) const;
  Scalar scalar_sub(Scalar a, Scalar b) const;
  Scalar scalar_neg(Scalar a) const;
  Scalar scalar_mul(Scalar a, Scalar b) const;
  bool scalar_is_zero(Scalar a) const { return a.v == 0; }

  /// x_1-adic valuation; nullopt for the zero residue (infinite, i.e.
  /// ">= N" in case B).
  std::optional<unsigned> scalar_valuation(Scalar a) const;

  /// The unique expansion a = sum a_j p^j with all a_j in iota(k), as
  /// (exponent, digit) pairs with nonzero digits, exponents < N.
  /// Case A: [(0, a)] for nonzero a.
  std::vector<std::pair<unsigned, Digit>> scalar_standard_form(Scalar a) const;

  // -- digits ---------------------------------------------------------------
  /// The unique digit congruent to the given residue-field element.
  /// Case B computes the fixed point of c -> c^p mod p^N; case A is the
  /// identity.
  Digit teichmuller(std::uint64_t residue) const;

  bool is_digit(Scalar a) const;
  Digit digit_mul(Digit a, Digit b) const;
  Digit digit_neg(Digit a) const;
  Digit digit_inv(Digit a) const;  // throws on zero
  bool digit_is_zero(Digit a) const { return a.v == 0; }
  Digit digit_one() const;

  /// The residue-field element a digit reduces to (0..p-1 in case B,
  /// the packed field value in case A).
  std::uint64_t digit_residue(Digit a) const;

  Scalar scalar_of(Digit a) const { return Scalar{a.v}; }
  Scalar scalar_mul_digit(Scalar a, Digit d) const { return scalar_mul(a, Scalar{d.v}); }

  // -- residue field helpers (case A uses these for its own arithmetic) ---
  std::uint64_t field_add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t field_neg(std::uint64_t a) const;
  std::uint64_t field_mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t field_inv(std::uint64_t a) const;

private:
  CoefficientDomain() = default;

  CoeffCase case_ = CoeffCase::A;
  std::uint64_t p_ = 0;
  unsigned m_ = 1;
  unsigned precision_ = 1;
  std::uint64_t pN_ = 0;  // p^precision, case B only
  std::uint64_t q_ = 0;   // p^m
  std::vector<std::uint64_t> irred_;        // monic, c_0..c_m (case A, m > 1)
  std::vector<std::uint64_t> teich_table_;  // case B: iota(c) for c = 0..p-1
};

bool is_prime(std::uint64_t n);

}  // namespace sps
