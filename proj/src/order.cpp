#include "sps/order.hpp"

#include <algorithm>
#include <stdexcept>

#include "sps/coeff.hpp"

namespace sps {

unsigned total_degree(const Exponent& a) {
  unsigned d = 0;
  for (unsigned x : a) d += x;
  return d;
}

Exponent exponent_add(const Exponent& a, const Exponent& b) {
  Exponent r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Exponent exponent_sub(const Exponent& a, const Exponent& b) {
  Exponent r(a);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (b[i] > r[i]) throw error("exponent_sub: not divisible");
    r[i] -= b[i];
  }
  return r;
}

Exponent unit_exponent(unsigned n, unsigned i) {
  Exponent e(n, 0);
  e[i - 1] = 1;
  return e;
}

std::optional<OrderTag> order_from_name(const std::string& name) {
  if (name == "lex") return OrderTag::lex;
  if (name == "deglex") return OrderTag::deglex;
  if (name == "degrevlex") return OrderTag::degrevlex;
  return std::nullopt;
}

std::string order_name(OrderTag t) {
  switch (t) {
    case OrderTag::lex: return "lex";
    case OrderTag::deglex: return "deglex";
    case OrderTag::degrevlex: return "degrevlex";
  }
  return "?";
}

int order_compare(OrderTag tag, const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw error("order_compare: length mismatch");
  if (tag != OrderTag::lex) {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db ? -1 : 1;
  }
  if (tag == OrderTag::degrevlex) {
    // rightmost nonzero entry of b - a negative  <=>  a < b
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    return 0;
  }
  // lex / deglex: leftmost nonzero entry of b - a positive  <=>  a < b
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

bool div_leq(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw error("div_leq: length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

bool shuffle_order_leq(const Exponent& alpha, const Exponent& beta) {
  if (alpha.size() != beta.size()) throw error("shuffle_order_leq: length mismatch");
  unsigned pa = 0, pb = 0;
  for (std::size_t k = 0; k + 1 < alpha.size(); ++k) {
    pa += alpha[k];
    pb += beta[k];
    if (pb < pa) return false;
  }
  return total_degree(beta) >= total_degree(alpha);
}

Exponent exponent_join(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw error("exponent_join: length mismatch");
  Exponent r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::max(r[i], b[i]);
  return r;
}

namespace {
void enumerate_rec(unsigned pos, unsigned remaining, Exponent& cur,
                   std::vector<Exponent>& out) {
  if (pos == cur.size()) {
    out.push_back(cur);
    return;
  }
  for (unsigned v = 0; v <= remaining; ++v) {
    cur[pos] = v;
    enumerate_rec(pos + 1, remaining - v, cur, out);
  }
  cur[pos] = 0;
}
}  // namespace

std::vector<Exponent> exponents_below(unsigned n, unsigned cap) {
  std::vector<Exponent> out;
  if (cap == 0) return out;
  Exponent cur(n, 0);
  enumerate_rec(0, cap - 1, cur, out);
  return out;
}

std::vector<Exponent> sorted_exponents_below(OrderTag tag, unsigned n, unsigned cap) {
  auto out = exponents_below(n, cap);
  std::sort(out.begin(), out.end(),
            [tag](const Exponent& a, const Exponent& b) { return order_less(tag, a, b); });
  return out;
}

bool is_triangular_pair(OrderTag tag, const Exponent& alpha, const Exponent& beta) {
  if (!shuffle_order_leq(alpha, beta)) return true;
  return order_compare(tag, alpha, beta) <= 0;
}

}  // namespace sps
