#include "sps/presets.hpp"

#include "sps/textio.hpp"

namespace sps {

PresPtr preset_yx_p2(unsigned precision, std::uint64_t p) {
  RingSpec spec;
  spec.coeff_case = CoeffCase::B;
  spec.p = p;
  spec.nvars = 3;
  spec.precision = precision;
  spec.order = OrderTag::lex;
  spec.delta[{3, 2}] = {TableTerm{{2, 0, 0}, 1}};  // delta_3(x2) = p^2
  return RingPresentation::create(spec);
}

PresPtr preset_delta_x2(unsigned precision, std::uint64_t p, OrderTag order) {
  return preset_delta_xm(2, precision, p, order);
}

PresPtr preset_delta_xm(unsigned m, unsigned precision, std::uint64_t p, OrderTag order) {
  if (m < 2) throw error("delta(x) = x^m needs m >= 2");
  RingSpec spec;
  spec.coeff_case = CoeffCase::A;
  spec.p = p;
  spec.nvars = 2;
  spec.precision = precision;
  spec.order = order;
  spec.delta[{2, 1}] = {TableTerm{{m, 0}, 1}};
  return RingPresentation::create(spec);
}

PresPtr preset_qcomm(std::uint64_t q, unsigned precision, std::uint64_t p, unsigned nvars,
                     OrderTag order) {
  RingSpec spec;
  spec.coeff_case = CoeffCase::A;
  spec.p = p;
  spec.nvars = nvars;
  spec.precision = precision;
  spec.order = order;
  std::uint64_t qres = q % p;
  if (qres == 0) throw error("qcomm: q must be nonzero mod p");
  for (unsigned i = 2; i <= nvars; ++i)
    for (unsigned r = 1; r < i; ++r)
      spec.sigma[{i, r}] = {TableTerm{unit_exponent(nvars, r), qres}};
  return RingPresentation::create(spec);
}

PresPtr preset_commutative(std::uint64_t p, unsigned nvars, unsigned precision, OrderTag order) {
  RingSpec spec;
  spec.coeff_case = CoeffCase::A;
  spec.p = p;
  spec.nvars = nvars;
  spec.precision = precision;
  spec.order = order;
  return RingPresentation::create(spec);
}

void apply_preset(RingSpec& spec, const std::string& name, bool have_p, bool have_precision,
                  bool have_order, bool have_n) {
  if (name == "yx-p2") {
    spec.coeff_case = CoeffCase::B;
    spec.ext_degree = 1;
    if (have_n && spec.nvars != 3) throw error("preset yx-p2 fixes n = 3");
    spec.nvars = 3;
    if (!have_p) spec.p = 3;
    if (!have_precision) spec.precision = 12;
    if (!have_order) spec.order = OrderTag::lex;
    spec.sigma.clear();
    spec.delta.clear();
    spec.delta[{3, 2}] = {TableTerm{{2, 0, 0}, 1}};
    return;
  }
  if (name == "delta-x2") {
    spec.coeff_case = CoeffCase::A;
    spec.ext_degree = 1;
    if (have_n && spec.nvars != 2) throw error("preset delta-x2 fixes n = 2");
    spec.nvars = 2;
    if (!have_p) spec.p = 5;
    if (!have_precision) spec.precision = 10;
    if (!have_order) spec.order = OrderTag::deglex;
    spec.sigma.clear();
    spec.delta.clear();
    spec.delta[{2, 1}] = {TableTerm{{2, 0}, 1}};
    return;
  }
  if (name.rfind("qcomm(", 0) == 0 && name.back() == ')') {
    std::uint64_t q = 0;
    try {
      q = std::stoull(name.substr(6, name.size() - 7));
    } catch (...) {
      throw error("bad preset argument in '" + name + "'");
    }
    spec.coeff_case = CoeffCase::A;
    spec.ext_degree = 1;
    if (!have_n) spec.nvars = 2;
    if (!have_p) spec.p = 5;
    if (!have_precision) spec.precision = 10;
    if (!have_order) spec.order = OrderTag::deglex;
    std::uint64_t qres = q % spec.p;
    if (qres == 0) throw error("qcomm: q must be nonzero mod p");
    spec.sigma.clear();
    spec.delta.clear();
    for (unsigned i = 2; i <= spec.nvars; ++i)
      for (unsigned r = 1; r < i; ++r)
        spec.sigma[{i, r}] = {TableTerm{unit_exponent(spec.nvars, r), qres}};
    return;
  }
  throw error("unknown preset '" + name + "' (expected yx-p2, delta-x2 or qcomm(q))");
}

}  // namespace sps
