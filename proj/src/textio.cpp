#include "sps/textio.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "sps/presets.hpp"

namespace sps {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct RawFactor {
  unsigned var;
  unsigned pow;
};

struct RawTerm {
  int sign = 1;
  bool teich = false;     // coefficient written as T(c)
  long long ivalue = 1;   // plain integer coefficient
  u64 tvalue = 0;         // the c of T(c)
  std::vector<RawFactor> factors;  // in written order
};

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;
  unsigned line = 1, col = 1;

  void advance() {
    if (pos < s.size()) {
      if (s[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) advance();
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!accept(c)) throw parse_error(std::string("expected '") + c + "' in " + what, line, col);
  }
  u64 integer(const char* what) {
    skip_ws();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      throw parse_error(std::string("expected integer in ") + what, line, col);
    u64 v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + static_cast<u64>(s[pos] - '0');
      advance();
    }
    return v;
  }
};

std::vector<RawTerm> parse_terms(const std::string& text) {
  std::vector<RawTerm> terms;
  Cursor cur{text};
  bool first = true;
  while (!cur.eof()) {
    RawTerm t;
    if (cur.accept('-'))
      t.sign = -1;
    else if (cur.accept('+')) {
      if (first) throw parse_error("element may not start with '+'", cur.line, cur.col);
    } else if (!first) {
      throw parse_error("expected '+' or '-' between terms", cur.line, cur.col);
    }
    first = false;

    bool saw_coeff = false;
    char c = cur.peek();
    if (c == 'T') {
      cur.advance();
      cur.expect('(', "Teichmuller coefficient");
      t.teich = true;
      t.tvalue = cur.integer("Teichmuller coefficient");
      cur.expect(')', "Teichmuller coefficient");
      saw_coeff = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.ivalue = static_cast<long long>(cur.integer("coefficient"));
      saw_coeff = true;
    }

    bool expect_factor = false;
    if (saw_coeff && cur.accept('*')) expect_factor = true;
    while (true) {
      char d = cur.peek();
      if (d != 'x') {
        if (expect_factor) throw parse_error("expected a variable after '*'", cur.line, cur.col);
        break;
      }
      // factors after the first unit need an explicit '*'
      if (!expect_factor && (saw_coeff || !t.factors.empty())) break;
      cur.advance();
      unsigned var = static_cast<unsigned>(cur.integer("variable index"));
      unsigned pw = 1;
      if (cur.accept('^')) pw = static_cast<unsigned>(cur.integer("exponent"));
      t.factors.push_back({var, pw});
      expect_factor = false;
      if (cur.accept('*')) expect_factor = true;
    }
    if (!saw_coeff && t.factors.empty())
      throw parse_error("empty term", cur.line, cur.col);
    terms.push_back(std::move(t));
  }
  if (terms.empty()) throw parse_error("empty element expression");
  return terms;
}

Scalar term_scalar(const CoefficientDomain& dom, const RawTerm& t) {
  if (t.teich && t.tvalue >= dom.residue_field_size())
    throw parse_error("Teichmuller residue " + std::to_string(t.tvalue) + " out of range");
  Scalar c = t.teich ? dom.scalar_of(dom.teichmuller(t.tvalue)) : dom.from_int(t.ivalue);
  return t.sign < 0 ? dom.scalar_neg(c) : c;
}

u64 pow_mod(u64 p, unsigned e, u64 mod) {
  u64 r = 1 % mod;
  for (unsigned i = 0; i < e; ++i) r = static_cast<u64>(u128(r) * p % mod);
  return r;
}

/// Spec-level standard form of a table entry (no presentation exists yet):
/// combines like terms and expands case-B scalars into digits.
std::vector<TableTerm> standardize_entry(const CoefficientDomain& dom, unsigned n, unsigned N,
                                         const std::vector<RawTerm>& raw) {
  std::map<Exponent, u64> slots;
  for (const auto& t : raw) {
    Exponent e(n, 0);
    unsigned prev = 0;
    for (const auto& f : t.factors) {
      if (f.var < 1 || f.var > n)
        throw parse_error("variable x" + std::to_string(f.var) + " out of range");
      if (f.var < prev) throw parse_error("variable indices must not decrease within a term");
      prev = f.var;
      e[f.var - 1] += f.pow;
    }
    if (total_degree(e) >= N) continue;
    Scalar c = term_scalar(dom, t);
    if (dom.coeff_case() == CoeffCase::A) {
      u64& slot = slots[e];
      slot = dom.scalar_add(Scalar{slot}, c).v;
    } else {
      unsigned e1 = e[0];
      e[0] = 0;
      u64& slot = slots[e];
      slot = (slot + static_cast<u64>(u128(c.v) * pow_mod(dom.p(), e1, dom.modulus()) %
                                      dom.modulus())) %
             dom.modulus();
    }
  }
  std::vector<TableTerm> out;
  for (const auto& [e, v] : slots) {
    if (dom.coeff_case() == CoeffCase::A) {
      if (v) out.push_back({e, v});
    } else {
      unsigned tail = total_degree(e);
      for (const auto& [j, d] : dom.scalar_standard_form(Scalar{v})) {
        if (j + tail >= N) break;
        Exponent ne(e);
        ne[0] = j;
        out.push_back({ne, dom.digit_residue(d)});
      }
    }
  }
  return out;
}

}  // namespace

Element parse_element(PresPtr pres, const std::string& text, bool lenient) {
  std::vector<RawTerm> raw = parse_terms(text);
  const CoefficientDomain& dom = pres->domain();
  unsigned n = pres->nvars();

  std::vector<std::pair<Scalar, Exponent>> strict;
  Element out = Element::zero(pres);
  bool used_mul = false;

  for (const auto& t : raw) {
    bool decreasing = false;
    unsigned prev = 0;
    for (const auto& f : t.factors) {
      if (f.var < 1 || f.var > n)
        throw parse_error("variable x" + std::to_string(f.var) + " out of range");
      if (f.var < prev) decreasing = true;
      prev = prev > f.var ? prev : f.var;
    }
    if (decreasing && !lenient)
      throw parse_error(
          "variable indices must not decrease within a term; use mul to build reordered "
          "products");
    if (decreasing) {
      Element val = from_scalar(pres, term_scalar(dom, t));
      for (const auto& f : t.factors) {
        Exponent e(n, 0);
        e[f.var - 1] = f.pow;
        val = mul(val, Element::monomial(pres, e));
      }
      out = add(out, val);
      used_mul = true;
    } else {
      Exponent e(n, 0);
      for (const auto& f : t.factors) e[f.var - 1] += f.pow;
      strict.emplace_back(term_scalar(dom, t), std::move(e));
    }
  }
  Element base = normalize_scalar_terms(pres, strict);
  return used_mul ? add(out, base) : base;
}

std::string print_digit(const CoefficientDomain& dom, Digit d) {
  if (dom.coeff_case() == CoeffCase::A) return std::to_string(d.v);
  if (d.v == 1) return "1";
  return "T(" + std::to_string(dom.digit_residue(d)) + ")";
}

std::string print_exponent(const Exponent& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

std::string print_canonical(const Element& e) {
  if (e.is_zero()) return "0";
  const CoefficientDomain& dom = e.pres()->domain();
  std::ostringstream os;
  bool first = true;
  for (const auto& [exp, d] : e.terms()) {
    if (!first) os << " + ";
    first = false;
    os << print_digit(dom, d);
    for (std::size_t v = 0; v < exp.size(); ++v)
      if (exp[v]) os << "*x" << (v + 1) << "^" << exp[v];
  }
  return os.str();
}

RingSpec parse_ring_spec(const std::string& text) {
  std::optional<CoeffCase> ccase;
  std::optional<u64> p;
  std::optional<unsigned> m, n, precision;
  std::optional<OrderTag> order;
  std::optional<std::string> preset;
  std::vector<std::tuple<char, unsigned, unsigned, std::string>> entries;  // which, i, r, expr

  std::istringstream in(text);
  std::string line;
  unsigned lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    std::string key, value;
    if (eq != std::string::npos) {
      key = line.substr(0, eq);
      value = line.substr(eq + 1);
    } else {
      key = line;
    }
    auto trim = [](std::string& s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    };
    trim(key);
    trim(value);
    if (key.empty()) continue;
    if (eq == std::string::npos) throw parse_error("expected key = value", lineno, 1);

    auto as_uint = [&](const std::string& v) -> u64 {
      try {
        std::size_t used = 0;
        u64 r = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return r;
      } catch (...) {
        throw parse_error("bad integer '" + v + "' for key " + key, lineno, 1);
      }
    };

    if (key == "case") {
      if (value == "A")
        ccase = CoeffCase::A;
      else if (value == "B")
        ccase = CoeffCase::B;
      else
        throw parse_error("case must be A or B", lineno, 1);
    } else if (key == "p") {
      p = as_uint(value);
    } else if (key == "m") {
      m = static_cast<unsigned>(as_uint(value));
    } else if (key == "n") {
      n = static_cast<unsigned>(as_uint(value));
    } else if (key == "precision") {
      precision = static_cast<unsigned>(as_uint(value));
    } else if (key == "order") {
      order = order_from_name(value);
      if (!order) throw parse_error("unknown order '" + value + "'", lineno, 1);
    } else if (key == "preset") {
      preset = value;
    } else if (key.rfind("sigma[", 0) == 0 || key.rfind("delta[", 0) == 0) {
      char which = key[0] == 's' ? 's' : 'd';
      unsigned i = 0, r = 0;
      if (std::sscanf(key.c_str() + 5, "[%u][%u]", &i, &r) != 2)
        throw parse_error("bad table key '" + key + "' (want sigma[i][r])", lineno, 1);
      entries.emplace_back(which, i, r, value);
    } else {
      throw parse_error("unknown key '" + key + "'", lineno, 1);
    }
  }

  RingSpec spec;
  if (preset) {
    if (!entries.empty())
      throw parse_error("preset rings take no explicit sigma/delta tables");
    if (p) spec.p = *p;
    if (precision) spec.precision = *precision;
    if (order) spec.order = *order;
    if (n) spec.nvars = *n;
    apply_preset(spec, *preset, p.has_value(), precision.has_value(), order.has_value(),
                 n.has_value());
    if (ccase && *ccase != spec.coeff_case) throw parse_error("preset fixes a different case");
    if (m && *m != spec.ext_degree) throw parse_error("preset fixes a different m");
    return spec;
  }

  if (!ccase || !p || !n || !precision || !order)
    throw parse_error("ring spec needs case, p, n, precision and order");
  spec.coeff_case = *ccase;
  spec.p = *p;
  spec.ext_degree = m.value_or(1);
  spec.nvars = *n;
  spec.precision = *precision;
  spec.order = *order;

  CoefficientDomain dom = spec.coeff_case == CoeffCase::A
                              ? CoefficientDomain::finite_field(spec.p, spec.ext_degree)
                              : CoefficientDomain::zp(spec.p, spec.precision);
  for (const auto& [which, i, r, expr] : entries) {
    auto terms = standardize_entry(dom, spec.nvars, spec.precision, parse_terms(expr));
    auto& table = which == 's' ? spec.sigma : spec.delta;
    table[{i, r}] = std::move(terms);
  }
  return spec;
}

PresPtr load_ring(const std::string& text) {
  return RingPresentation::create(parse_ring_spec(text));
}

}  // namespace sps
