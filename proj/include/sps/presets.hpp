#pragma once

#include "sps/ring.hpp"

namespace sps {

/// Z_p[[x]][[y; delta]] with delta(x) = p^2 over Z_3: case B, n = 3
/// (x1 = p, x2 = x, x3 = y), lex. The relation reads x3 x2 = x2 x3 + x1^2.
PresPtr preset_yx_p2(unsigned precision = 12, std::uint64_t p = 3);

/// F_p[[x]][[y; delta]] with sigma = id, delta(x) = x^2: case A, n = 2.
PresPtr preset_delta_x2(unsigned precision = 10, std::uint64_t p = 5,
                        OrderTag order = OrderTag::deglex);

/// sigma = id, delta(x) = x^m over F_p (the nilpotence family).
PresPtr preset_delta_xm(unsigned m, unsigned precision = 12, std::uint64_t p = 5,
                        OrderTag order = OrderTag::deglex);

/// q-commutative ring: sigma_i(x_r) = q x_r for every pair, delta = 0.
PresPtr preset_qcomm(std::uint64_t q, unsigned precision = 10, std::uint64_t p = 5,
                     unsigned nvars = 2, OrderTag order = OrderTag::deglex);

/// Commutative power series ring F_{p}[[x_1..x_n]] (trivial tables).
PresPtr preset_commutative(std::uint64_t p, unsigned nvars, unsigned precision,
                           OrderTag order = OrderTag::deglex);

/// Expands `preset = name` in a partially filled RingSpec. Recognized
/// names: yx-p2, delta-x2, qcomm(q). The have_* flags say which fields the
/// caller set explicitly; the others fall back to the preset's defaults.
void apply_preset(RingSpec& spec, const std::string& name, bool have_p = false,
                  bool have_precision = false, bool have_order = false, bool have_n = false);

}  // namespace sps
