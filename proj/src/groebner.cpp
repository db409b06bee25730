#include "sps/groebner.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace sps {

namespace {

/// Re-expresses an element at a different precision: terms of degree >= the
/// target cap are dropped, digits are re-lifted through their residues
/// (digits are determined by their residue-field value).
Element recast(const Element& e, const PresPtr& target) {
  const CoefficientDomain& src = e.pres()->domain();
  const CoefficientDomain& dst = target->domain();
  TermMap out(target->term_cmp());
  for (const auto& [exp, d] : e.terms()) {
    if (total_degree(exp) >= target->precision()) continue;
    out.emplace(exp, dst.teichmuller(src.digit_residue(d)));
  }
  return Element::from_terms(target, std::move(out), e.truncated());
}

/// Degree drop of a divisor: |LM| minus the smallest total degree in its
/// support. Positive only under lex (the leading monomial minimizes degree
/// for the graded orders).
int degree_drop(const Element& f) {
  int lm_deg = static_cast<int>(total_degree(*leading_monomial(f)));
  int min_deg = std::numeric_limits<int>::max();
  for (const auto& [e, c] : f.terms()) min_deg = std::min(min_deg, static_cast<int>(total_degree(e)));
  return lm_deg - min_deg;
}

struct RawDivision {
  std::vector<Element> quotients;
  Element remainder;
  bool truncated = false;
};

/// One finite division pass at the given working presentation. Each
/// iteration strictly raises LM(g) inside the finite staircase below the
/// cap, so the loop terminates.
RawDivision divide_at(const Element& f, const DivisorTuple& F, const PresPtr& P) {
  RawDivision out;
  Element g = recast(f, P);
  out.truncated = g.truncated();
  std::vector<Element> fs;
  fs.reserve(F.size());
  for (const auto& fi : F.fs) {
    fs.push_back(recast(fi, P));
    out.truncated = out.truncated || fs.back().truncated();
  }
  DivisionRegions regions{F.lms};
  const CoefficientDomain& dom = P->domain();

  std::vector<TermMap> qs(F.size(), TermMap(P->term_cmp()));
  TermMap rem(P->term_cmp());

  // hard bound: LM(g) strictly increases through the monomials below the cap
  std::size_t guard = 1;
  for (unsigned k = 1; k <= P->nvars(); ++k)
    guard = guard * (P->precision() - 1 + k) / k;  // C(N-1+n, n), exact stepwise
  guard += 2;
  std::size_t steps = 0;
  while (!g.is_zero()) {
    if (++steps > guard) throw error("right_divide: leading monomial failed to increase (internal)");
    Exponent beta = *leading_monomial(g);
    Digit t = leading_coeff(g);
    int i = regions.classify(beta);
    if (i >= 0) {
      Exponent gamma = exponent_sub(beta, F.lms[i]);
      Element xgf = mono_mul(gamma, fs[i]);
      Digit u = leading_coeff(xgf);  // lc(x^gamma f_i), not lc(f_i)
      Digit c = dom.digit_mul(t, dom.digit_inv(u));
      qs[i].emplace(std::move(gamma), c);
      g = sub(g, digit_scale(c, xgf));
    } else {
      rem.emplace(beta, t);
      TermMap rest(g.terms());
      rest.erase(rest.begin());
      g = Element::from_terms(P, std::move(rest), g.truncated());
    }
  }
  out.quotients.reserve(F.size());
  for (auto& q : qs) out.quotients.push_back(Element::from_terms(P, std::move(q)));
  out.remainder = Element::from_terms(P, std::move(rem));
  return out;
}

/// Residues of all output coefficients of degree < N, for stabilization
/// comparison across different working precisions.
bool agree_below(const RawDivision& a, const RawDivision& b, unsigned N) {
  auto shadow = [N](const Element& e) {
    std::vector<std::pair<Exponent, std::uint64_t>> v;
    const CoefficientDomain& dom = e.pres()->domain();
    for (const auto& [exp, d] : e.terms())
      if (total_degree(exp) < N) v.emplace_back(exp, dom.digit_residue(d));
    return v;
  };
  if (a.quotients.size() != b.quotients.size()) return false;
  for (std::size_t i = 0; i < a.quotients.size(); ++i)
    if (shadow(a.quotients[i]) != shadow(b.quotients[i])) return false;
  return shadow(a.remainder) == shadow(b.remainder);
}

DivisionResult finalize(const RawDivision& raw, const DivisorTuple& F, const PresPtr& home,
                        Certificate cert) {
  DivisionResult res;
  res.cert = cert;
  res.truncated = raw.truncated;
  res.quotients.reserve(raw.quotients.size());
  for (std::size_t i = 0; i < raw.quotients.size(); ++i) {
    Element q = recast(raw.quotients[i], home);
    // a quotient term contributes nothing mod m^N once even the lowest
    // degree in its divisor multiple falls above the cap; drop those
    unsigned low = total_degree(F.lms[i]) - static_cast<unsigned>(
                       std::max(0, degree_drop(F.fs[i])));
    TermMap trimmed(home->term_cmp());
    for (const auto& [e, d] : q.terms())
      if (total_degree(e) + low < home->precision()) trimmed.emplace(e, d);
    res.quotients.push_back(Element::from_terms(home, std::move(trimmed), q.truncated()));
  }
  res.remainder = recast(raw.remainder, home);
  return res;
}

}  // namespace

DivisorTuple DivisorTuple::of(const std::vector<Element>& fs) {
  DivisorTuple F;
  for (const auto& f : fs) {
    if (f.is_zero()) throw error("divisor tuple contains a zero element");
    F.fs.push_back(f);
    F.lms.push_back(*leading_monomial(f));
  }
  return F;
}

int DivisionRegions::classify(const Exponent& e) const {
  for (std::size_t i = 0; i < corners.size(); ++i)
    if (div_leq(corners[i], e)) return static_cast<int>(i);
  return -1;
}

DivisionRegions delta_regions(const DivisorTuple& F) { return DivisionRegions{F.lms}; }

namespace {

/// Largest precision whose modulus p^N still fits in 64 bits (case B);
/// unbounded for fields.
unsigned representable_cap(const CoefficientDomain& dom, unsigned want) {
  if (dom.coeff_case() == CoeffCase::A) return want;
  std::uint64_t p = dom.p(), acc = 1;
  unsigned e = 0;
  while (e < want && acc <= UINT64_MAX / p) {
    acc *= p;
    ++e;
  }
  return e;
}

}  // namespace

DivisionResult right_divide(const Element& f, const DivisorTuple& F, unsigned max_cap) {
  const PresPtr& P = f.pres();
  unsigned N = P->precision();
  if (max_cap == 0) max_cap = 4 * N;

  if (F.size() == 0) {
    DivisionResult res;
    res.remainder = f;
    res.cert = {CertKind::exact, N};
    return res;
  }

  int maxdrop = 0;
  for (const auto& fi : F.fs) maxdrop = std::max(maxdrop, degree_drop(fi));

  if (P->order() != OrderTag::lex || maxdrop <= 0) {
    return finalize(divide_at(f, F, P), F, P, Certificate{CertKind::exact, N});
  }

  // lex with positive degree drop: rerun at growing working caps until two
  // consecutive runs agree on everything below N; the ceiling is clamped to
  // what the scalar representation can hold
  unsigned ceiling = representable_cap(P->domain(), std::max(max_cap, N));
  unsigned headroom = static_cast<unsigned>(maxdrop) + 1;
  RawDivision prev = divide_at(f, F, P);
  unsigned cap = N;
  while (true) {
    unsigned next = std::min(cap + headroom, ceiling);
    if (next <= cap) return finalize(prev, F, P, Certificate{CertKind::failed, cap});
    RawDivision cur = divide_at(f, F, P->with_precision(next));
    if (agree_below(prev, cur, N))
      return finalize(cur, F, P, Certificate{CertKind::stabilized, next});
    prev = std::move(cur);
    cap = next;
    headroom *= 2;
  }
}

Element spair(const Element& g, const Element& gp) {
  if (g.is_zero() || gp.is_zero()) throw error("spair: zero input");
  Exponent gamma = *leading_monomial(g);
  Exponent gammap = *leading_monomial(gp);
  Exponent join = exponent_join(gamma, gammap);
  if (total_degree(join) >= g.pres()->precision())
    return Element::zero(g.pres());  // the whole S-element sits in m^N
  Element t1 = mono_mul(exponent_sub(join, gamma), g);
  Element t2 = mono_mul(exponent_sub(join, gammap), gp);
  const CoefficientDomain& dom = g.pres()->domain();
  return sub(digit_scale(dom.digit_inv(leading_coeff(t1)), t1),
             digit_scale(dom.digit_inv(leading_coeff(t2)), t2));
}

BuchbergerWitness buchberger_check(const std::vector<Element>& G, unsigned max_cap) {
  BuchbergerWitness w;
  if (G.empty()) return w;
  DivisorTuple F = DivisorTuple::of(G);
  for (std::size_t i = 0; i < G.size(); ++i) {
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      Element S = spair(G[i], G[j]);
      if (S.is_zero()) continue;
      DivisionResult d = right_divide(S, F, max_cap);
      if (d.cert.kind == CertKind::failed)
        throw error("buchberger_check: lex stabilization failed");
      if (!d.remainder.is_zero()) {
        w.pass = false;
        w.i = i;
        w.j = j;
        w.remainder = d.remainder;
        return w;
      }
    }
  }
  return w;
}

GroebnerBasis complete(const std::vector<Element>& generators, unsigned max_cap) {
  if (generators.empty()) throw error("complete: no generators");
  for (const auto& g : generators)
    if (g.is_zero()) throw error("complete: zero generator");
  const PresPtr& P = generators.front().pres();
  const CoefficientDomain& dom = P->domain();

  GroebnerBasis out;
  out.gens = generators;
  out.order = P->order();
  out.precision = P->precision();
  out.cert = {CertKind::exact, P->precision()};

  std::vector<std::pair<std::size_t, std::size_t>> pending;
  auto push_pairs = [&](std::size_t upto) {
    for (std::size_t i = 0; i < upto; ++i) pending.emplace_back(i, upto);
  };
  for (std::size_t j = 1; j < out.gens.size(); ++j) push_pairs(j);

  auto join_of = [&](const std::pair<std::size_t, std::size_t>& pr) {
    return exponent_join(*leading_monomial(out.gens[pr.first]),
                         *leading_monomial(out.gens[pr.second]));
  };

  auto append = [&](const Element& rem, std::size_t i, std::size_t j) {
    Element g_new = digit_scale(dom.digit_inv(leading_coeff(rem)), rem);
    out.gens.push_back(g_new);
    std::ostringstream os;
    os << "appended generator " << out.gens.size() << " from S(" << (i + 1) << "," << (j + 1)
       << ")";
    out.log.push_back(os.str());
    push_pairs(out.gens.size() - 1);
  };

  while (true) {
    while (!pending.empty()) {
      // normal selection: smallest join in the active order, ties by index
      std::size_t best = 0;
      Exponent bestj = join_of(pending[0]);
      for (std::size_t k = 1; k < pending.size(); ++k) {
        Exponent jk = join_of(pending[k]);
        int c = order_compare(P->order(), jk, bestj);
        if (c < 0 || (c == 0 && pending[k] < pending[best])) {
          best = k;
          bestj = std::move(jk);
        }
      }
      auto [i, j] = pending[best];
      pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));

      Element S = spair(out.gens[i], out.gens[j]);
      if (S.is_zero()) continue;
      DivisionResult d = right_divide(S, DivisorTuple::of(out.gens), max_cap);
      if (d.cert.kind == CertKind::failed) throw error("complete: lex stabilization failed");
      if (d.cert.kind == CertKind::stabilized) out.cert = d.cert;
      if (d.remainder.is_zero()) continue;
      append(d.remainder, i, j);
    }
    // zero reductions above were taken against intermediate bases; rerun
    // the criterion against the final tuple and resume if anything slipped
    BuchbergerWitness w = buchberger_check(out.gens, max_cap);
    if (w.pass) break;
    append(w.remainder, w.i, w.j);
  }
  return out;
}

GroebnerBasis groebner_from_checked(const std::vector<Element>& G) {
  BuchbergerWitness w = buchberger_check(G);
  if (!w.pass) throw error("groebner_from_checked: tuple fails the Buchberger criterion");
  GroebnerBasis out;
  out.gens = G;
  if (!G.empty()) {
    out.order = G.front().pres()->order();
    out.precision = G.front().pres()->precision();
  }
  return out;
}

MemberResult member(const Element& f, const GroebnerBasis& G, unsigned max_cap) {
  MemberResult res;
  if (G.gens.empty()) {  // the zero ideal
    res.yes = f.is_zero();
    res.remainder = f;
    return res;
  }
  DivisionResult d = right_divide(f, DivisorTuple::of(G.gens), max_cap);
  if (d.cert.kind == CertKind::failed) throw error("member: lex stabilization failed");
  res.yes = d.remainder.is_zero();
  res.remainder = d.remainder;
  return res;
}

bool nested_equal(const GroebnerBasis& G_I, const GroebnerBasis& G_J, unsigned max_cap) {
  for (const auto& g : G_J.gens)
    if (!member(g, G_I, max_cap).yes)
      throw error("nested_equal: a generator of G_J is not a member of I");
  auto covered = [](const std::vector<Element>& gens, const Exponent& e) {
    for (const auto& g : gens)
      if (div_leq(*leading_monomial(g), e)) return true;
    return false;
  };
  for (const auto& g : G_I.gens)
    if (!covered(G_J.gens, *leading_monomial(g))) return false;
  for (const auto& g : G_J.gens)
    if (!covered(G_I.gens, *leading_monomial(g))) return false;
  return true;
}

Element invert_unit(const Element& w) {
  const PresPtr& P = w.pres();
  const CoefficientDomain& dom = P->domain();
  Exponent zero_exp(P->nvars(), 0);
  auto it = w.terms().find(zero_exp);
  if (it == w.terms().end()) throw error("invert_unit: not a unit (zero constant digit)");
  Digit d = it->second;
  Digit dinv = dom.digit_inv(d);
  // w = d (1 - z) with z in m; the inverse is (sum z^j) d^{-1}
  Element v = sub(w, Element::monomial(P, zero_exp, d));
  Element z = neg(digit_scale(dinv, v));
  Element sum = Element::one(P);
  Element zk = Element::one(P);
  for (unsigned j = 1; j < P->precision(); ++j) {
    zk = mul(zk, z);
    if (zk.is_zero()) break;
    sum = add(sum, zk);
  }
  return digit_scale(dinv, sum);
}

WeierstrassResult weierstrass(const Element& f, unsigned max_cap) {
  if (f.is_zero()) throw error("weierstrass: zero input");
  const PresPtr& P = f.pres();
  const CoefficientDomain& dom = P->domain();
  Element ltf = leading_term(f);
  Element rest = sub(f, ltf);
  DivisionResult d = right_divide(rest, DivisorTuple::of({f}), max_cap);
  if (d.cert.kind == CertKind::failed) throw error("weierstrass: lex stabilization failed");
  Digit cinv = dom.digit_inv(leading_coeff(f));
  WeierstrassResult res;
  res.cert = d.cert;
  res.prepared = digit_scale(cinv, add(ltf, d.remainder));
  Element w = digit_scale(cinv, sub(Element::one(P), d.quotients[0]));
  res.unit = invert_unit(w);
  return res;
}

}  // namespace sps
