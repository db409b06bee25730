#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sps {

/// Exponent vector in N^n indexing a standard monomial x^alpha.
/// In case B rings coordinate 1 is the power of the uniformiser p.
using Exponent = std::vector<unsigned>;

unsigned total_degree(const Exponent& a);
Exponent exponent_add(const Exponent& a, const Exponent& b);
/// Coordinatewise a - b; requires b <=_div a.
Exponent exponent_sub(const Exponent& a, const Exponent& b);
Exponent unit_exponent(unsigned n, unsigned i);  // e_i, 1-based i

enum class OrderTag { lex, deglex, degrevlex };

std::optional<OrderTag> order_from_name(const std::string& name);
std::string order_name(OrderTag t);

/// Three-way comparison: -1 if a < b, 0 if equal, +1 if a > b.
/// All three orders are additive total well-orderings on N^n.
int order_compare(OrderTag tag, const Exponent& a, const Exponent& b);

inline bool order_less(OrderTag tag, const Exponent& a, const Exponent& b) {
  return order_compare(tag, a, b) < 0;
}

/// Divisibility partial order: b - a in N^n.
bool div_leq(const Exponent& a, const Exponent& b);

/// Membership of beta in F(alpha), the closure of {alpha} under adding
/// elementary shuffles e_i - e_j (i <= j) and standard basis vectors.
/// Uses the prefix-sum criterion: |beta| >= |alpha| and every proper
/// prefix sum of beta dominates the one of alpha. The criterion is
/// checked against a brute-force closure oracle in the test suite.
bool shuffle_order_leq(const Exponent& alpha, const Exponent& beta);

/// Coordinatewise maximum.
Exponent exponent_join(const Exponent& a, const Exponent& b);

/// All exponents of total degree < cap in n variables, sorted ascending
/// in the given order. The list has C(cap-1+n, n) entries.
std::vector<Exponent> sorted_exponents_below(OrderTag tag, unsigned n, unsigned cap);

/// Unsorted variant in a fixed generation order (used by sweeps).
std::vector<Exponent> exponents_below(unsigned n, unsigned cap);

/// Test helper for triangularity sweeps: whether the implication
/// (beta in F(alpha)) => alpha <= beta holds for this single pair.
bool is_triangular_pair(OrderTag tag, const Exponent& alpha, const Exponent& beta);

/// Comparator for ordered term maps.
struct ExpLess {
  OrderTag tag = OrderTag::lex;
  bool operator()(const Exponent& a, const Exponent& b) const {
    return order_compare(tag, a, b) < 0;
  }
};

}  // namespace sps
