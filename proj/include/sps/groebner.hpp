#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sps/ring.hpp"

namespace sps {

/// Ordered tuple of nonzero divisors sharing one presentation, with their
/// leading monomials cached.
struct DivisorTuple {
  std::vector<Element> fs;
  std::vector<Exponent> lms;

  static DivisorTuple of(const std::vector<Element>& fs);  // throws on zero entry
  std::size_t size() const { return fs.size(); }
};

/// The partition of N^n into the translated orthants above the divisor
/// leading monomials, minus earlier regions, plus the complement.
struct DivisionRegions {
  std::vector<Exponent> corners;  // LM(f_1), ..., LM(f_s)

  /// Index 0..s-1 of the region containing e, or -1 when e lies in the
  /// complement region. O(s n) per query.
  int classify(const Exponent& e) const;
};

DivisionRegions delta_regions(const DivisorTuple& F);

enum class CertKind { exact, stabilized, failed };

/// Lex-stability certificate for truncated division. deglex/degrevlex runs
/// and lex runs whose divisors have no degree drop are exact at cap N;
/// otherwise the division reruns at growing working caps until two
/// consecutive runs agree below N.
struct Certificate {
  CertKind kind = CertKind::exact;
  unsigned cap = 0;  // the working cap that produced the result
};

struct DivisionResult {
  std::vector<Element> quotients;
  Element remainder;
  bool truncated = false;
  Certificate cert;
};

/// Multivariate right-division: f = q_1 f_1 + ... + q_s f_s + r mod m^N
/// with supp(q_i) + LM(f_i) inside region i, supp(r) inside the complement,
/// and LM(f) <= LM(q_i f_i) for every nonzero q_i.
/// max_cap bounds the lex stabilization reruns (0 = default 4N).
DivisionResult right_divide(const Element& f, const DivisorTuple& F, unsigned max_cap = 0);

/// S(g, g') = x^b g / LC(x^b g) - x^b' g' / LC(x^b' g') at the join of the
/// leading monomials; the least terms cancel.
Element spair(const Element& g, const Element& gp);

struct BuchbergerWitness {
  bool pass = true;
  std::size_t i = 0, j = 0;  // offending pair when !pass
  Element remainder;
};

/// Truncated Buchberger criterion: every S-element remainder on
/// right-division by G lies in m^N.
BuchbergerWitness buchberger_check(const std::vector<Element>& G, unsigned max_cap = 0);

struct GroebnerBasis {
  std::vector<Element> gens;
  OrderTag order = OrderTag::deglex;
  unsigned precision = 0;
  std::vector<std::string> log;  // completion events
  Certificate cert;              // worst division certificate seen
};

/// Buchberger completion with the normal selection strategy (pairs ordered
/// by the join of their leading monomials); appended remainders are
/// normalized to leading coefficient 1.
GroebnerBasis complete(const std::vector<Element>& generators, unsigned max_cap = 0);

GroebnerBasis groebner_from_checked(const std::vector<Element>& G);  // asserts the criterion

struct MemberResult {
  bool yes = false;
  Element remainder;
};

/// Truncated left-ideal membership: f lies in I + m^N iff the remainder
/// on right-division by G vanishes mod m^N.
MemberResult member(const Element& f, const GroebnerBasis& G, unsigned max_cap = 0);

/// Given that every generator of G_J is a member of the ideal of G_I,
/// decides whether the two staircases <LM(G_I)> and <LM(G_J)> coincide
/// (and hence the ideals agree mod m^N). Throws if the nesting
/// precondition fails.
bool nested_equal(const GroebnerBasis& G_I, const GroebnerBasis& G_J, unsigned max_cap = 0);

/// Weierstrass preparation: f = u F mod m^N with u a unit, LC(F) = 1 and
/// supp(F) meeting LM(f) + N^n only at LM(f).
struct WeierstrassResult {
  Element unit;
  Element prepared;
  Certificate cert;
};

WeierstrassResult weierstrass(const Element& f, unsigned max_cap = 0);

/// Inverse of a unit (nonzero constant digit) mod m^N.
Element invert_unit(const Element& w);

}  // namespace sps
