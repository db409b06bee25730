#include "sps/apps.hpp"

#include <algorithm>
#include <sstream>

#include "sps/textio.hpp"

namespace sps {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

void require_flagship_shape(const PresPtr& P, const char* who) {
  if (P->coeff_case() != CoeffCase::B || P->nvars() != 3)
    throw error(std::string(who) + ": needs the 3-variable case-B presentation (x1 = p)");
}

u64 pow_u64(u64 b, unsigned e) {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

unsigned int_valuation(u64 x, u64 p) {
  unsigned v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

/// Shift every exponent's first coordinate down by a (division by p^a);
/// legal whenever the whole support has first coordinate >= a.
Element strip_uniformiser(const Element& f, unsigned a) {
  const PresPtr& P = f.pres();
  TermMap out(P->term_cmp());
  for (const auto& [e, d] : f.terms()) {
    if (e[0] < a) throw error("strip_uniformiser: element is not divisible by p^a");
    Exponent ne(e);
    ne[0] -= a;
    out.emplace(std::move(ne), d);
  }
  return Element::from_terms(P, std::move(out), f.truncated());
}

}  // namespace

Element partial_derivative(const Element& f, unsigned var, unsigned k) {
  const PresPtr& P = f.pres();
  require_flagship_shape(P, "partial_derivative");
  if (var != 2 && var != 3) throw error("partial_derivative: var must be 2 (x) or 3 (y)");
  if (k == 0) return f;
  const CoefficientDomain& dom = P->domain();

  // termwise on the stored standard form, in packed scalar form; then
  // re-standardize
  std::vector<std::pair<Scalar, Exponent>> parts;
  for (const auto& [e, d] : f.terms()) {
    unsigned b = e[var - 1];
    if (b < k) continue;
    Scalar c = dom.scalar_of(d);
    for (unsigned step = 0; step < k; ++step)
      c = dom.scalar_mul(c, dom.from_int(static_cast<long long>(b - step)));
    Exponent ne(e);
    ne[var - 1] -= k;
    parts.emplace_back(c, std::move(ne));
  }
  Element out = Element::zero(P);
  for (const auto& [c, e] : parts) {
    Element term = scalar_scale(c, Element::monomial(P, e));
    out = add(out, term);
  }
  return out;
}

FactorialRatioValuation factorial_ratio_valuation(u64 a, unsigned r, u64 p) {
  if (!is_prime(p)) throw error("factorial_ratio_valuation: p must be prime");
  if (r < 1) throw error("factorial_ratio_valuation: r must be >= 1");
  u64 pr = pow_u64(p, r);
  if (a < pr) throw error("factorial_ratio_valuation: requires a >= p^r");
  FactorialRatioValuation out;
  for (u64 m = a - pr + 1; m <= a; ++m) out.value += int_valuation(m, p);
  u64 bound = 0;
  for (unsigned i = 0; i < r; ++i) bound += pow_u64(p, i);
  out.equality = (out.value == bound);
  return out;
}

DerivativeStep lm_derivative_step(const Element& f) {
  const PresPtr& P = f.pres();
  require_flagship_shape(P, "lm_derivative_step");
  auto lmo = leading_monomial(f, OrderTag::lex);
  if (!lmo) throw error("lm_derivative_step: zero element");
  const Exponent& lm = *lmo;
  unsigned a = lm[0], b = lm[1], c = lm[2];
  u64 p = P->domain().p();

  DerivativeStep step;
  unsigned var = 0, t = 0;
  if (b != 0) {
    var = 2;
    t = int_valuation(b, p);
  } else if (c != 0) {
    var = 3;
    t = int_valuation(c, p);
  } else {
    throw error("lm_derivative_step: leading monomial has no x or y part");
  }
  unsigned pt = static_cast<unsigned>(pow_u64(p, t));
  unsigned v = 0;
  for (unsigned i = 0; i < t; ++i) v += static_cast<unsigned>(pow_u64(p, i));

  step.op = (var == 2 ? "dx^" : "dy^") + std::to_string(pt);
  step.result = partial_derivative(f, var, pt);
  step.predicted_lm = var == 2 ? Exponent{a + v, b - pt, c} : Exponent{a + v, b, c - pt};
  auto obs = leading_monomial(step.result, OrderTag::lex);
  if (!obs) throw error("lm_derivative_step: derivative vanished at this precision");
  step.observed_lm = *obs;
  return step;
}

std::string DerivativeTrace::to_text() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < steps.size(); ++k)
    os << "step " << (k + 1) << ": " << steps[k].op << " lm=" << print_exponent(steps[k].lm)
       << " deg=" << steps[k].degree << "\n";
  os << "terminal: "
     << (terminal == TraceTerminal::unit
             ? "unit"
             : terminal == TraceTerminal::p_divisible ? "p-divisible" : "budget-exhausted")
     << "\n";
  return os.str();
}

DerivativeTrace prime_height1_demo(const Element& f, unsigned budget) {
  const PresPtr& P = f.pres();
  require_flagship_shape(P, "prime_height1_demo");
  DerivativeTrace trace;
  Element cur = f;
  auto record = [&](std::string op, const Element& e) {
    auto lmo = leading_monomial(e, OrderTag::lex);
    trace.steps.push_back(
        {std::move(op), lmo ? *lmo : Exponent{}, lmo ? total_degree(*lmo) : 0u});
  };

  while (true) {
    auto lmo = leading_monomial(cur, OrderTag::lex);
    if (!lmo) {  // the zero element sits inside pR trivially
      trace.terminal = TraceTerminal::p_divisible;
      break;
    }
    unsigned a = (*lmo)[0], b = (*lmo)[1], c = (*lmo)[2];
    if (a == 0 && b == 0 && c == 0) {
      trace.terminal = TraceTerminal::unit;
      break;
    }
    if (b == 0 && c == 0) {  // LM is a pure power of p: p | cur is certified
      trace.terminal = TraceTerminal::p_divisible;
      break;
    }
    if (trace.steps.size() >= budget) {
      trace.terminal = TraceTerminal::budget_exhausted;
      break;
    }
    if (a > 0) {
      cur = strip_uniformiser(cur, a);
      record("p^-" + std::to_string(a), cur);
      continue;
    }
    DerivativeStep step = lm_derivative_step(cur);
    if (step.observed_lm != step.predicted_lm)
      throw error("prime_height1_demo: observed LM deviates from the predicted value");
    cur = step.result;
    record(step.op, cur);
    // the derivative raises the p-exponent by exactly v; scale it away
    unsigned v = step.predicted_lm[0] - a;
    if (v > 0) {
      cur = strip_uniformiser(cur, v);
      record("p^-" + std::to_string(v), cur);
    }
  }
  trace.final_element = cur;
  return trace;
}

// -- two-dimensional ladders -----------------------------------------------

TruncatedBasisLadder build_ladder(const std::vector<Element>& G_J,
                                  const std::vector<Element>& extension) {
  PresPtr P;
  if (!extension.empty())
    P = extension.front().pres();
  else if (!G_J.empty())
    P = G_J.front().pres();
  else
    throw error("build_ladder: nothing to build from");
  if (P->coeff_case() != CoeffCase::A || P->domain().ext_degree() != 1 || P->nvars() != 2 ||
      P->order() != OrderTag::lex)
    throw error("build_ladder: needs a 2-variable F_p presentation under lex");

  TruncatedBasisLadder ladder;
  ladder.h = G_J;
  ladder.g = extension;

  if (!G_J.empty()) {
    BuchbergerWitness w = buchberger_check(G_J);
    if (!w.pass) throw error("build_ladder: G_J fails the Buchberger criterion");
  }
  GroebnerBasis base = {G_J, P->order(), P->precision(), {}, {}};
  for (std::size_t i = 0; i < extension.size(); ++i) {
    if (extension[i].is_zero()) throw error("build_ladder: zero extension element");
    if (i > 0 && order_compare(OrderTag::lex, *leading_monomial(extension[i - 1]),
                               *leading_monomial(extension[i])) <= 0)
      throw error("build_ladder: extension leading monomials must strictly decrease");
    if (member(extension[i], base).yes)
      throw error("build_ladder: extension element already lies in J");
  }

  for (std::size_t r = 0; r <= extension.size(); ++r) {
    GroebnerBasis level;
    level.gens = G_J;
    level.gens.insert(level.gens.end(), extension.begin(), extension.begin() + r);
    level.order = P->order();
    level.precision = P->precision();
    ladder.levels.push_back(std::move(level));
  }

  // Region containments of the full tuple: the i-th extension region sits in
  // the box [g_{i,1}, g_{i-1,1}) x [g_{i,2}, inf), and regions of later
  // extension elements are lex-smaller.
  std::vector<Element> full = ladder.levels.back().gens;
  if (!full.empty()) {
    DivisionRegions regions = delta_regions(DivisorTuple::of(full));
    std::size_t t = G_J.size();
    unsigned B = 1;
    for (const auto& corner : regions.corners) B = std::max({B, corner[0], corner[1]});
    B += 2;
    std::vector<std::pair<Exponent, int>> grid;
    for (unsigned x = 0; x <= B; ++x)
      for (unsigned y = 0; y <= B; ++y) {
        Exponent e{x, y};
        grid.emplace_back(e, regions.classify(e));
      }
    auto gamma = [&](std::size_t i) { return *leading_monomial(extension[i]); };
    for (const auto& [e, cls] : grid) {
      if (cls < static_cast<int>(t)) continue;  // complement or a J-region
      std::size_t i = static_cast<std::size_t>(cls) - t;  // 0-based extension region
      bool ok = e[1] >= gamma(i)[1] && e[0] >= gamma(i)[0] &&
                (i == 0 || e[0] < gamma(i - 1)[0]);
      if (!ok)
        ladder.region_report.push_back(
            {"exponent " + print_exponent(e) + " of region " + std::to_string(i + 1) +
             " escapes its box"});
    }
    for (const auto& [e1, c1] : grid)
      for (const auto& [e2, c2] : grid) {
        if (c1 < static_cast<int>(t) || c2 < static_cast<int>(t)) continue;
        if (c1 < c2 && order_compare(OrderTag::lex, e1, e2) <= 0) {
          ladder.region_report.push_back({"regions " + std::to_string(c1 - t + 1) + " and " +
                                          std::to_string(c2 - t + 1) +
                                          " are not lex-separated at " + print_exponent(e1) +
                                          " / " + print_exponent(e2)});
        }
      }

  }
  return ladder;
}

SamplePanel sample_panel(PresPtr pres, unsigned degree_bound, unsigned random_count,
                         std::uint64_t seed) {
  SamplePanel panel;
  for (const auto& e : sorted_exponents_below(pres->order(), pres->nvars(), degree_bound + 1))
    panel.elements.push_back(Element::monomial(pres, e));
  std::mt19937_64 rng(seed);
  for (unsigned k = 0; k < random_count; ++k) {
    Element e = random_element(pres, rng, 6, std::min(pres->precision() - 1, degree_bound + 3));
    if (!e.is_zero()) panel.elements.push_back(e);
  }
  return panel;
}

TwoSidednessReport two_sidedness_check(const TruncatedBasisLadder& ladder, std::size_t r,
                                       const SamplePanel& samples) {
  const GroebnerBasis& level = ladder.level(r);
  if (!level.gens.empty()) {
    BuchbergerWitness w = buchberger_check(level.gens);
    if (!w.pass) throw error("two_sidedness_check: G_r fails the Buchberger criterion");
  }
  TwoSidednessReport rep;
  for (std::size_t gi = 0; gi < level.gens.size(); ++gi) {
    for (std::size_t si = 0; si < samples.elements.size(); ++si) {
      Element prod = mul(level.gens[gi], samples.elements[si]);
      MemberResult m = member(prod, level);
      ++rep.checked;
      if (!m.yes) rep.failures.push_back({gi, si, m.remainder});
    }
  }
  return rep;
}

WitnessReport polynormal_witness(const TruncatedBasisLadder& ladder, const SamplePanel& samples) {
  if (ladder.g.empty()) throw error("polynormal_witness: ladder has no extension");
  const GroebnerBasis& G1 = ladder.level(1);
  {
    BuchbergerWitness w = buchberger_check(G1.gens);
    if (!w.pass) throw error("polynormal_witness: G_1 fails the Buchberger criterion");
  }
  GroebnerBasis GJ = {ladder.h, G1.order, G1.precision, {}, {}};
  WitnessReport rep;
  rep.g1 = ladder.g.front();
  std::size_t g1_pos = ladder.h.size();
  DivisorTuple tuple = DivisorTuple::of(G1.gens);
  for (std::size_t si = 0; si < samples.elements.size(); ++si) {
    Element prod = mul(rep.g1, samples.elements[si]);
    DivisionResult d = right_divide(prod, tuple);
    ++rep.checked;
    if (!d.remainder.is_zero()) {
      rep.failures.push_back({si, d.remainder});
      continue;
    }
    Element rprime = d.quotients[g1_pos];
    Element discrepancy = sub(prod, mul(rprime, rep.g1));
    MemberResult m = member(discrepancy, GJ);
    if (!m.yes) rep.failures.push_back({si, m.remainder});
  }
  return rep;
}

std::size_t first_failing_prefix(const std::vector<Element>& G) {
  for (std::size_t r = 1; r <= G.size(); ++r) {
    std::vector<Element> prefix(G.begin(), G.begin() + r);
    if (!buchberger_check(prefix).pass) return r;
  }
  return 0;
}

Element random_element(PresPtr pres, std::mt19937_64& rng, unsigned max_terms,
                       unsigned max_degree, bool allow_constant) {
  auto pool = exponents_below(pres->nvars(), max_degree + 1);
  std::vector<std::pair<long long, Exponent>> raw;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<unsigned> nterms(1, std::max(1u, max_terms));
  long long cmax = static_cast<long long>(pres->domain().p() * pres->domain().p());
  std::uniform_int_distribution<long long> coeff(1, std::max<long long>(2, cmax - 1));
  unsigned k = nterms(rng);
  for (unsigned t = 0; t < k; ++t) {
    Exponent e = pool[pick(rng)];
    if (!allow_constant && total_degree(e) == 0) e = unit_exponent(pres->nvars(), pres->nvars());
    raw.emplace_back(coeff(rng), std::move(e));
  }
  return normalize(pres, raw);
}

}  // namespace sps
