#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sps/coeff.hpp"
#include "sps/order.hpp"

namespace sps {

class Element;

/// One table entry term, stored precision-independently: the digit is
/// identified by its residue-field value and re-instantiated per precision.
struct TableTerm {
  Exponent exp;
  std::uint64_t residue;
};

/// Builder description of a ring tower. Pairs (i, r) with i > r index the
/// tables; omitted pairs default to sigma = id, delta = 0. In case B the
/// variable x_1 is the uniformiser p, central, and may not appear as an r.
struct RingSpec {
  CoeffCase coeff_case = CoeffCase::A;
  std::uint64_t p = 2;
  unsigned ext_degree = 1;  // case A only; case B requires 1
  unsigned nvars = 1;
  unsigned precision = 8;  // N: total-degree cap == scalar digit depth
  OrderTag order = OrderTag::deglex;
  std::vector<std::uint64_t> irreducible;  // optional, case A with m > 1
  std::map<std::pair<unsigned, unsigned>, std::vector<TableTerm>> sigma;
  std::map<std::pair<unsigned, unsigned>, std::vector<TableTerm>> delta;
};

struct ValidationIssue {
  unsigned i = 0, r = 0;
  std::string what;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string to_string() const;
};

struct validation_error : error {
  ValidationReport report;
  explicit validation_error(ValidationReport rep)
      : error("ring validation failed:\n" + rep.to_string()), report(std::move(rep)) {}
};

using TermMap = std::map<Exponent, Digit, ExpLess>;

/// A validated ring presentation: coefficient domain, variable count,
/// precision N (all elements live mod m^N), active order and the
/// sigma/delta tables. Immutable after construction; the product memo is
/// internally synchronized, so presentations are safe to share.
class RingPresentation : public std::enable_shared_from_this<RingPresentation> {
public:
  /// Shape and consistency checks: locality of each table entry,
  /// invertible linear coefficient, homomorphism consistency of sigma and
  /// Leibniz consistency of delta on all defining relations mod m^N.
  static ValidationReport validate(const RingSpec& spec);

  /// Validates and constructs; throws validation_error on failure.
  static std::shared_ptr<const RingPresentation> create(const RingSpec& spec);

  const RingSpec& spec() const { return spec_; }
  const CoefficientDomain& domain() const { return dom_; }
  CoeffCase coeff_case() const { return spec_.coeff_case; }
  unsigned nvars() const { return spec_.nvars; }
  unsigned precision() const { return spec_.precision; }
  OrderTag order() const { return spec_.order; }
  bool triangular() const { return triangular_; }

  /// Same tower at a different working precision (used by the division
  /// stabilization driver). Tables carry over; digits are re-lifted.
  std::shared_ptr<const RingPresentation> with_precision(unsigned M) const;

  /// sigma_i(x_r) / delta_i(x_r) as elements, 1 <= r < i <= nvars.
  Element sigma_of_var(unsigned i, unsigned r) const;
  Element delta_of_var(unsigned i, unsigned r) const;

  /// Normalized product x_i * x^beta (memoized; the cache has no semantic
  /// effect).
  Element var_times_mono(unsigned i, const Exponent& beta) const;

  ExpLess term_cmp() const { return ExpLess{spec_.order}; }

private:
  RingPresentation(RingSpec spec, CoefficientDomain dom, bool triangular);

  RingSpec spec_;
  CoefficientDomain dom_;
  bool triangular_ = false;

  // memoized normalized products, stored without back-references to avoid
  // a shared_ptr cycle through Element
  mutable std::mutex memo_mx_;
  mutable std::map<std::pair<unsigned, Exponent>, TermMap> memo_;
};

using PresPtr = std::shared_ptr<const RingPresentation>;

/// A ring element in standard form: a finite map exponent -> nonzero digit,
/// all exponents of total degree < N. Immutable value type.
class Element {
public:
  Element() = default;  // detached zero; most callers want Element::zero(pres)

  static Element zero(PresPtr pres);
  static Element one(PresPtr pres);
  static Element monomial(PresPtr pres, const Exponent& e);
  static Element monomial(PresPtr pres, const Exponent& e, Digit d);
  static Element from_terms(PresPtr pres, TermMap terms, bool truncated = false);

  const PresPtr& pres() const { return pres_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool truncated() const { return truncated_; }
  std::size_t term_count() const { return terms_.size(); }

  friend bool operator==(const Element& a, const Element& b);
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

private:
  PresPtr pres_;
  TermMap terms_;
  bool truncated_ = false;
};

// -- construction ----------------------------------------------------------

/// Collects like terms of (integer coefficient, exponent) pairs, expands
/// scalars into Teichmuller digits (shifting the x_1 exponent in case B),
/// and truncates at total degree >= N (recorded on the result).
Element normalize(PresPtr pres,
                  const std::vector<std::pair<long long, Exponent>>& raw_terms);

/// Like normalize, but with explicit Scalar coefficients.
Element normalize_scalar_terms(PresPtr pres,
                               const std::vector<std::pair<Scalar, Exponent>>& raw_terms);

Element from_scalar(PresPtr pres, Scalar c);

// -- arithmetic ------------------------------------------------------------

Element add(const Element& a, const Element& b);
Element sub(const Element& a, const Element& b);
Element neg(const Element& a);
Element mul(const Element& a, const Element& b);

/// Termwise scaling by a digit (exact, support-preserving).
Element digit_scale(Digit d, const Element& a);
/// Scaling by a general scalar (case B: may spread support along e_1).
Element scalar_scale(Scalar c, const Element& a);
/// x^alpha * b.
Element mono_mul(const Exponent& alpha, const Element& b);

// -- leading data ----------------------------------------------------------

/// Least monomial in the active order; nullopt for zero (the infinity
/// sentinel: alpha < infinity for every alpha).
std::optional<Exponent> leading_monomial(const Element& a);
std::optional<Exponent> leading_monomial(const Element& a, OrderTag tag);
Digit leading_coeff(const Element& a);   // throws on zero
Element leading_term(const Element& a);  // throws on zero
std::vector<Exponent> support(const Element& a);

bool equal(const Element& a, const Element& b);

// -- skew derivation action -------------------------------------------------

/// sigma_i extended as a ring homomorphism fixing A; input must lie in the
/// subring R_{i-1} (variables x_1..x_{i-1} only).
Element apply_sigma(unsigned i, const Element& a);
/// delta_i extended A-linearly by the Leibniz rule on monomials.
Element apply_delta(unsigned i, const Element& a);

// -- generalised monomials ---------------------------------------------------

/// A generalised monomial: coefficient times x_{i_1} ... x_{i_m} with
/// arbitrary index sequence.
struct Word {
  Scalar coeff;
  std::vector<unsigned> letters;  // values in 1..n
};

/// Standard form of a generalised monomial mod m^N, computed by rewriting
/// adjacent descents x_s x_r -> sigma_s(x_r) x_s + delta_s(x_r).
Element rewrite_word(PresPtr pres, const Word& w);

}  // namespace sps
