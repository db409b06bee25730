#pragma once

#include <string>

#include "sps/ring.hpp"

namespace sps {

struct parse_error : error {
  unsigned line = 0, column = 0;
  parse_error(const std::string& what, unsigned ln = 0, unsigned col = 0)
      : error(ln ? ("line " + std::to_string(ln) + ", col " + std::to_string(col) + ": " + what)
                 : what),
        line(ln),
        column(col) {}
};

/// Parses the key-value ring description (one key per line, '#' comments):
/// case, p, m, n, precision, order, sigma[i][r] = <element>, delta[i][r] =
/// <element>, preset = <name>. Presets: yx-p2, delta-x2, qcomm(q).
RingSpec parse_ring_spec(const std::string& text);

/// Parses and validates; throws validation_error with the report on
/// failure.
PresPtr load_ring(const std::string& text);

/// Element grammar: sum of terms `c * x1^a1 * ... * xn^an` with integer or
/// T(c) coefficient; variable indices must not decrease inside a term.
/// With lenient = true, decreasing indices are accepted and evaluated as a
/// ring product instead of being rejected.
Element parse_element(PresPtr pres, const std::string& text, bool lenient = false);

/// Canonical text: terms ascending in the active order; case-B digits
/// other than 1 print as T(c) with c the residue representative; zero
/// prints as "0".
std::string print_canonical(const Element& e);

std::string print_digit(const CoefficientDomain& dom, Digit d);
std::string print_exponent(const Exponent& e);  // "(a,b,c)"

}  // namespace sps
