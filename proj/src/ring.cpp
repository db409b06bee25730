#include "sps/ring.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace sps {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 pow_u64_mod(u64 p, unsigned e, u64 mod) {
  u64 r = 1 % mod;
  for (unsigned i = 0; i < e; ++i) r = static_cast<u64>(u128(r) * p % mod);
  return r;
}

bool spec_equal(const RingSpec& a, const RingSpec& b) {
  auto terms_equal = [](const std::vector<TableTerm>& x, const std::vector<TableTerm>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].exp != y[i].exp || x[i].residue != y[i].residue) return false;
    return true;
  };
  if (a.coeff_case != b.coeff_case || a.p != b.p || a.ext_degree != b.ext_degree ||
      a.nvars != b.nvars || a.precision != b.precision || a.order != b.order ||
      a.irreducible != b.irreducible)
    return false;
  if (a.sigma.size() != b.sigma.size() || a.delta.size() != b.delta.size()) return false;
  for (const auto& [k, v] : a.sigma) {
    auto it = b.sigma.find(k);
    if (it == b.sigma.end() || !terms_equal(v, it->second)) return false;
  }
  for (const auto& [k, v] : a.delta) {
    auto it = b.delta.find(k);
    if (it == b.delta.end() || !terms_equal(v, it->second)) return false;
  }
  return true;
}

bool compatible(const PresPtr& a, const PresPtr& b) {
  if (a.get() == b.get()) return a != nullptr;
  if (!a || !b) return false;
  return spec_equal(a->spec(), b->spec());
}

void require_compatible(const Element& a, const Element& b, const char* who) {
  if (!compatible(a.pres(), b.pres()))
    throw error(std::string(who) + ": presentation mismatch");
}

void require_mul_order(const RingPresentation& P) {
  if (P.order() == OrderTag::lex && !P.triangular())
    throw error("lex is not a monomial order for non-triangular presentations; use deglex or degrevlex");
}

/// Collects terms with carries. Case A slots hold field values keyed by the
/// full exponent; case B slots hold residues mod p^N keyed by the exponent
/// with its first coordinate folded into the scalar.
struct Accum {
  const RingPresentation* P;
  std::map<Exponent, u64> slots;
  bool truncated = false;

  explicit Accum(const RingPresentation* pres) : P(pres) {}

  void add_scalar(const Exponent& e, Scalar c) {
    if (c.v == 0) return;
    if (total_degree(e) >= P->precision()) return;  // m^N truncation is exact
    const CoefficientDomain& dom = P->domain();
    if (dom.coeff_case() == CoeffCase::A) {
      u64& slot = slots[e];
      slot = dom.scalar_add(Scalar{slot}, c).v;
    } else {
      Exponent key(e);
      unsigned e1 = key[0];
      key[0] = 0;
      u64 mod = dom.modulus();
      u64 shifted = static_cast<u64>(u128(c.v) * pow_u64_mod(dom.p(), e1, mod) % mod);
      u64& slot = slots[key];
      slot = (slot + shifted) % mod;
    }
  }

  void add_digit(const Exponent& e, Digit d) { add_scalar(e, Scalar{d.v}); }

  void add_scaled(const Element& x, Digit scale) {
    truncated = truncated || x.truncated();
    if (scale.v == 0) return;
    const CoefficientDomain& dom = P->domain();
    for (const auto& [e, c] : x.terms()) add_digit(e, dom.digit_mul(c, scale));
  }

  void add_element(const Element& x) { add_scaled(x, P->domain().digit_one()); }

  void add_scaled_scalar(const Element& x, Scalar scale) {
    truncated = truncated || x.truncated();
    const CoefficientDomain& dom = P->domain();
    for (const auto& [e, c] : x.terms())
      add_scalar(e, dom.scalar_mul(Scalar{c.v}, scale));
  }

  Element finish(PresPtr pres) const {
    const CoefficientDomain& dom = pres->domain();
    TermMap out(pres->term_cmp());
    if (dom.coeff_case() == CoeffCase::A) {
      for (const auto& [e, v] : slots)
        if (v) out.emplace(e, Digit{v});
    } else {
      unsigned N = pres->precision();
      for (const auto& [key, s] : slots) {
        unsigned tail_deg = total_degree(key);
        for (const auto& [j, d] : dom.scalar_standard_form(Scalar{s})) {
          if (j + tail_deg >= N) break;
          Exponent e(key);
          e[0] = j;
          out.emplace(std::move(e), d);
        }
      }
    }
    return Element::from_terms(std::move(pres), std::move(out), truncated);
  }
};

Element var_times_element(const PresPtr& P, unsigned i, const Element& x);

Element mono_times_element(const PresPtr& P, const Exponent& alpha, const Element& x) {
  Element cur = x;
  for (unsigned v = P->nvars(); v >= 1; --v) {
    for (unsigned k = 0; k < alpha[v - 1]; ++k) cur = var_times_element(P, v, cur);
    if (v == 1) break;
  }
  return cur;
}

Element var_times_element(const PresPtr& P, unsigned i, const Element& x) {
  Accum acc(P.get());
  acc.truncated = x.truncated();
  for (const auto& [beta, d] : x.terms()) acc.add_scaled(P->var_times_mono(i, beta), d);
  return acc.finish(P);
}

}  // namespace

// -- validation ---------------------------------------------------------------

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& is : issues)
    os << "  (i=" << is.i << ", r=" << is.r << "): " << is.what << "\n";
  return os.str();
}

namespace {

CoefficientDomain domain_of(const RingSpec& spec) {
  if (spec.coeff_case == CoeffCase::A)
    return CoefficientDomain::finite_field(spec.p, spec.ext_degree, spec.irreducible);
  return CoefficientDomain::zp(spec.p, spec.precision);
}

bool derive_triangular(const RingSpec& spec) {
  for (const auto& tables : {std::cref(spec.sigma), std::cref(spec.delta)}) {
    for (const auto& [key, terms] : tables.get()) {
      unsigned r = key.second;
      for (const auto& t : terms)
        for (std::size_t v = r; v < t.exp.size(); ++v)
          if (t.exp[v] > 0) return false;  // uses a variable above x_r
    }
  }
  return true;
}

void shape_check(const RingSpec& spec, ValidationReport& rep) {
  const unsigned n = spec.nvars;
  auto issue = [&](unsigned i, unsigned r, std::string what) {
    rep.issues.push_back({i, r, std::move(what)});
  };

  if (!is_prime(spec.p)) issue(0, 0, "p is not prime");
  if (spec.precision < 1) issue(0, 0, "precision must be >= 1");
  if (n < 1) issue(0, 0, "need at least one variable");
  if (spec.coeff_case == CoeffCase::B && spec.ext_degree != 1)
    issue(0, 0, "case B requires residue field F_p (m = 1)");

  u64 res_bound = 1;
  for (unsigned i = 0; i < (spec.coeff_case == CoeffCase::A ? spec.ext_degree : 1); ++i)
    res_bound *= spec.p;

  for (const auto& tables : {std::make_pair('s', std::cref(spec.sigma)),
                             std::make_pair('d', std::cref(spec.delta))}) {
    char which = tables.first;
    for (const auto& [key, terms] : tables.second) {
      auto [i, r] = key;
      std::string name = which == 's' ? "sigma" : "delta";
      if (!(1 <= r && r < i && i <= n)) {
        issue(i, r, name + " table pair must satisfy 1 <= r < i <= n");
        continue;
      }
      if (spec.coeff_case == CoeffCase::B && r == 1) {
        issue(i, r, "x1 is the central uniformiser; it has no " + name + " entry");
        continue;
      }
      bool has_linear_r = false;
      std::vector<Exponent> seen;
      for (const auto& t : terms) {
        if (t.exp.size() != n) {
          issue(i, r, name + " term has wrong exponent length");
          continue;
        }
        if (t.residue == 0 || t.residue >= res_bound) {
          issue(i, r, name + " term has residue out of range");
          continue;
        }
        if (std::find(seen.begin(), seen.end(), t.exp) != seen.end())
          issue(i, r, name + " entry repeats an exponent");
        seen.push_back(t.exp);
        unsigned deg = total_degree(t.exp);
        unsigned maxvar = 0;
        for (std::size_t v = 0; v < t.exp.size(); ++v)
          if (t.exp[v]) maxvar = static_cast<unsigned>(v + 1);
        if (maxvar >= i)
          issue(i, r, name + "_" + std::to_string(i) + "(x_" + std::to_string(r) +
                          ") uses x_" + std::to_string(maxvar) + " outside R_" +
                          std::to_string(i - 1));
        if (which == 's') {
          if (deg == 0) issue(i, r, "sigma image has a constant term: sigma(m) = m fails");
          if (t.exp == unit_exponent(n, r)) has_linear_r = true;
        } else {
          if (deg < 2) issue(i, r, "delta image has a term of degree < 2: delta(m^j) in m^{j+1} fails");
        }
      }
      if (which == 's' && !has_linear_r)
        issue(i, r, "sigma(x_r) lacks an invertible coefficient on x_r");
    }
  }
}

}  // namespace

RingPresentation::RingPresentation(RingSpec spec, CoefficientDomain dom, bool triangular)
    : spec_(std::move(spec)), dom_(std::move(dom)), triangular_(triangular) {}

ValidationReport RingPresentation::validate(const RingSpec& spec) {
  ValidationReport rep;
  try {
    domain_of(spec);
  } catch (const error& e) {
    rep.issues.push_back({0, 0, e.what()});
    return rep;
  }
  shape_check(spec, rep);
  if (!rep.ok()) return rep;

  // Consistency of the tower relations mod m^N. The provisional ring runs
  // under deglex; the order plays no role in the computed values.
  RingSpec work(spec);
  work.order = OrderTag::deglex;
  auto P = std::shared_ptr<RingPresentation>(
      new RingPresentation(work, domain_of(work), derive_triangular(work)));
  PresPtr cp = P;

  unsigned lo = spec.coeff_case == CoeffCase::B ? 2u : 1u;
  for (unsigned r = lo; r <= spec.nvars; ++r) {
    for (unsigned s = r + 1; s <= spec.nvars; ++s) {
      for (unsigned i = s + 1; i <= spec.nvars; ++i) {
        Element xr = Element::monomial(cp, unit_exponent(spec.nvars, r));
        Element xs = Element::monomial(cp, unit_exponent(spec.nvars, s));
        Element sig_s_xr = cp->sigma_of_var(s, r);
        Element del_s_xr = cp->delta_of_var(s, r);
        // sigma_i respects x_s x_r = sigma_s(x_r) x_s + delta_s(x_r)
        Element lhs = mul(apply_sigma(i, xs), apply_sigma(i, xr));
        Element rhs = add(mul(apply_sigma(i, sig_s_xr), apply_sigma(i, xs)),
                          apply_sigma(i, del_s_xr));
        if (!equal(lhs, rhs))
          rep.issues.push_back({i, r, "sigma_" + std::to_string(i) +
                                          " is inconsistent on the relation x_" +
                                          std::to_string(s) + " x_" + std::to_string(r)});
        // Leibniz rule of delta_i on the same relation
        Element dl = add(mul(apply_delta(i, xs), xr), mul(apply_sigma(i, xs), apply_delta(i, xr)));
        Element dr = add(add(mul(apply_delta(i, sig_s_xr), xs),
                             mul(apply_sigma(i, sig_s_xr), apply_delta(i, xs))),
                         apply_delta(i, del_s_xr));
        if (!equal(dl, dr))
          rep.issues.push_back({i, r, "delta_" + std::to_string(i) +
                                          " violates the Leibniz rule on the relation x_" +
                                          std::to_string(s) + " x_" + std::to_string(r)});
      }
    }
  }
  return rep;
}

std::shared_ptr<const RingPresentation> RingPresentation::create(const RingSpec& spec) {
  ValidationReport rep = validate(spec);
  if (!rep.ok()) throw validation_error(std::move(rep));
  return std::shared_ptr<const RingPresentation>(
      new RingPresentation(spec, domain_of(spec), derive_triangular(spec)));
}

std::shared_ptr<const RingPresentation> RingPresentation::with_precision(unsigned M) const {
  if (M == spec_.precision) return shared_from_this();
  RingSpec s(spec_);
  s.precision = M;
  return create(s);
}

Element RingPresentation::sigma_of_var(unsigned i, unsigned r) const {
  PresPtr self = shared_from_this();
  auto it = spec_.sigma.find({i, r});
  if (it == spec_.sigma.end() || (spec_.coeff_case == CoeffCase::B && r == 1))
    return Element::monomial(self, unit_exponent(spec_.nvars, r));
  TermMap terms(term_cmp());
  for (const auto& t : it->second) terms.emplace(t.exp, dom_.teichmuller(t.residue));
  return Element::from_terms(self, std::move(terms));
}

Element RingPresentation::delta_of_var(unsigned i, unsigned r) const {
  PresPtr self = shared_from_this();
  auto it = spec_.delta.find({i, r});
  if (it == spec_.delta.end() || (spec_.coeff_case == CoeffCase::B && r == 1))
    return Element::zero(self);
  TermMap terms(term_cmp());
  for (const auto& t : it->second) terms.emplace(t.exp, dom_.teichmuller(t.residue));
  return Element::from_terms(self, std::move(terms));
}

Element RingPresentation::var_times_mono(unsigned i, const Exponent& beta) const {
  {
    std::lock_guard<std::mutex> lk(memo_mx_);
    auto it = memo_.find({i, beta});
    if (it != memo_.end()) return Element::from_terms(shared_from_this(), it->second);
  }
  PresPtr self = shared_from_this();
  Element result;
  unsigned j = 0;  // least variable present in beta
  for (std::size_t v = 0; v < beta.size(); ++v)
    if (beta[v]) {
      j = static_cast<unsigned>(v + 1);
      break;
    }
  if (j == 0) {
    result = Element::monomial(self, unit_exponent(spec_.nvars, i));
  } else if (i <= j) {
    Exponent e(beta);
    e[i - 1] += 1;
    result = Element::monomial(self, e);
  } else {
    // descent: x_i x_j = sigma_i(x_j) x_i + delta_i(x_j), applied in front
    // of x^(beta - e_j)
    Exponent rest = exponent_sub(beta, unit_exponent(spec_.nvars, j));
    Element tail = var_times_mono(i, rest);  // x_i x^rest
    Accum acc(this);
    Element se = sigma_of_var(i, j);
    for (const auto& [gamma, c] : se.terms())
      acc.add_scaled(mono_times_element(self, gamma, tail), c);
    Element de = delta_of_var(i, j);
    if (!de.is_zero()) {
      Element rest_el = Element::monomial(self, rest);
      for (const auto& [gamma, c] : de.terms())
        acc.add_scaled(mono_times_element(self, gamma, rest_el), c);
    }
    result = acc.finish(self);
  }
  {
    std::lock_guard<std::mutex> lk(memo_mx_);
    memo_.emplace(std::make_pair(i, beta), result.terms());
  }
  return result;
}

// -- Element ------------------------------------------------------------------

Element Element::zero(PresPtr pres) {
  Element e;
  e.terms_ = TermMap(pres->term_cmp());
  e.pres_ = std::move(pres);
  return e;
}

Element Element::one(PresPtr pres) {
  return monomial(std::move(pres), Exponent(0), Digit{1});
}

Element Element::monomial(PresPtr pres, const Exponent& e) {
  Digit one = pres->domain().digit_one();
  return monomial(std::move(pres), e, one);
}

Element Element::monomial(PresPtr pres, const Exponent& e, Digit d) {
  Element out = zero(pres);
  Exponent key(e);
  if (key.empty()) key.assign(pres->nvars(), 0);
  if (key.size() != pres->nvars()) throw error("monomial: exponent length mismatch");
  if (d.v != 0) {
    if (total_degree(key) >= pres->precision())
      out.truncated_ = true;
    else
      out.terms_.emplace(std::move(key), d);
  }
  return out;
}

Element Element::from_terms(PresPtr pres, TermMap terms, bool truncated) {
  Element out;
  out.pres_ = std::move(pres);
  out.terms_ = std::move(terms);
  out.truncated_ = truncated;
  return out;
}

bool operator==(const Element& a, const Element& b) {
  if (!compatible(a.pres(), b.pres())) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second != ib->second) return false;
  return true;
}

Element normalize(PresPtr pres, const std::vector<std::pair<long long, Exponent>>& raw_terms) {
  Accum acc(pres.get());
  const CoefficientDomain& dom = pres->domain();
  for (const auto& [c, e] : raw_terms) {
    if (e.size() != pres->nvars()) throw error("normalize: exponent length mismatch");
    if (total_degree(e) >= pres->precision()) {
      acc.truncated = true;
      continue;
    }
    acc.add_scalar(e, dom.from_int(c));
  }
  return acc.finish(pres);
}

Element normalize_scalar_terms(PresPtr pres,
                               const std::vector<std::pair<Scalar, Exponent>>& raw_terms) {
  Accum acc(pres.get());
  for (const auto& [c, e] : raw_terms) {
    if (e.size() != pres->nvars()) throw error("normalize: exponent length mismatch");
    if (total_degree(e) >= pres->precision()) {
      acc.truncated = true;
      continue;
    }
    acc.add_scalar(e, c);
  }
  return acc.finish(pres);
}

Element from_scalar(PresPtr pres, Scalar c) {
  Accum acc(pres.get());
  acc.add_scalar(Exponent(pres->nvars(), 0), c);
  return acc.finish(pres);
}

Element add(const Element& a, const Element& b) {
  require_compatible(a, b, "add");
  Accum acc(a.pres().get());
  acc.add_element(a);
  acc.add_element(b);
  return acc.finish(a.pres());
}

Element sub(const Element& a, const Element& b) { return add(a, neg(b)); }

Element neg(const Element& a) {
  if (!a.pres()) return a;
  const CoefficientDomain& dom = a.pres()->domain();
  TermMap out(a.pres()->term_cmp());
  for (const auto& [e, c] : a.terms()) out.emplace(e, dom.digit_neg(c));
  return Element::from_terms(a.pres(), std::move(out), a.truncated());
}

Element digit_scale(Digit d, const Element& a) {
  if (d.v == 0) return Element::zero(a.pres());
  const CoefficientDomain& dom = a.pres()->domain();
  TermMap out(a.pres()->term_cmp());
  for (const auto& [e, c] : a.terms()) out.emplace(e, dom.digit_mul(c, d));
  return Element::from_terms(a.pres(), std::move(out), a.truncated());
}

Element scalar_scale(Scalar c, const Element& a) {
  Accum acc(a.pres().get());
  acc.add_scaled_scalar(a, c);
  return acc.finish(a.pres());
}

Element mul(const Element& a, const Element& b) {
  require_compatible(a, b, "mul");
  require_mul_order(*a.pres());
  Accum acc(a.pres().get());
  acc.truncated = a.truncated() || b.truncated();
  for (const auto& [alpha, c] : a.terms())
    acc.add_scaled(mono_times_element(a.pres(), alpha, b), c);
  return acc.finish(a.pres());
}

std::optional<Exponent> leading_monomial(const Element& a) {
  if (a.is_zero()) return std::nullopt;
  return a.terms().begin()->first;
}

std::optional<Exponent> leading_monomial(const Element& a, OrderTag tag) {
  if (a.is_zero()) return std::nullopt;
  if (tag == a.pres()->order()) return a.terms().begin()->first;
  const Exponent* best = nullptr;
  for (const auto& [e, c] : a.terms())
    if (!best || order_less(tag, e, *best)) best = &e;
  return *best;
}

Digit leading_coeff(const Element& a) {
  if (a.is_zero()) throw error("leading_coeff of zero");
  return a.terms().begin()->second;
}

Element leading_term(const Element& a) {
  if (a.is_zero()) throw error("leading_term of zero");
  const auto& [e, c] = *a.terms().begin();
  return Element::monomial(a.pres(), e, c);
}

std::vector<Exponent> support(const Element& a) {
  std::vector<Exponent> out;
  out.reserve(a.term_count());
  for (const auto& [e, c] : a.terms()) out.push_back(e);
  return out;
}

bool equal(const Element& a, const Element& b) { return a == b; }

Element apply_sigma(unsigned i, const Element& a) {
  const PresPtr& P = a.pres();
  if (i < 1 || i > P->nvars()) throw error("apply_sigma: bad index");
  for (const auto& [e, c] : a.terms())
    for (std::size_t v = i - 1; v < e.size(); ++v)
      if (e[v]) throw error("apply_sigma: element lies outside the subring R_{i-1}");
  Accum acc(P.get());
  acc.truncated = a.truncated();
  for (const auto& [e, c] : a.terms()) {
    Element t = Element::one(P);
    for (unsigned v = 1; v < i; ++v)
      for (unsigned k = 0; k < e[v - 1]; ++k) t = mul(t, P->sigma_of_var(i, v));
    acc.add_scaled(t, c);
  }
  return acc.finish(P);
}

namespace {
Element delta_of_mono(unsigned i, const PresPtr& P, const Exponent& alpha) {
  unsigned j = 0;
  for (std::size_t v = 0; v < alpha.size(); ++v)
    if (alpha[v]) {
      j = static_cast<unsigned>(v + 1);
      break;
    }
  if (j == 0) return Element::zero(P);  // delta(1) = 0 by A-linearity
  Exponent rest = exponent_sub(alpha, unit_exponent(P->nvars(), j));
  Element head = mul(P->delta_of_var(i, j), Element::monomial(P, rest));
  Element tail = delta_of_mono(i, P, rest);
  if (tail.is_zero()) return head;
  return add(head, mul(P->sigma_of_var(i, j), tail));
}
}  // namespace

Element apply_delta(unsigned i, const Element& a) {
  const PresPtr& P = a.pres();
  if (i < 1 || i > P->nvars()) throw error("apply_delta: bad index");
  for (const auto& [e, c] : a.terms())
    for (std::size_t v = i - 1; v < e.size(); ++v)
      if (e[v]) throw error("apply_delta: element lies outside the subring R_{i-1}");
  Accum acc(P.get());
  acc.truncated = a.truncated();
  for (const auto& [e, c] : a.terms()) acc.add_scaled(delta_of_mono(i, P, e), c);
  return acc.finish(P);
}

Element mono_mul(const Exponent& alpha, const Element& b) {
  if (alpha.size() != b.pres()->nvars()) throw error("mono_mul: exponent length mismatch");
  require_mul_order(*b.pres());
  return mono_times_element(b.pres(), alpha, b);
}

Element rewrite_word(PresPtr pres, const Word& w) {
  require_mul_order(*pres);
  Element cur = Element::one(pres);
  for (std::size_t k = w.letters.size(); k-- > 0;) {
    unsigned i = w.letters[k];
    if (i < 1 || i > pres->nvars()) throw error("rewrite_word: letter out of range");
    cur = var_times_element(pres, i, cur);
  }
  return scalar_scale(w.coeff, cur);
}

}  // namespace sps
