#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sps/coeff.hpp"

using namespace sps;

TEST_CASE("teichmuller lifts in Z_3 mod 81") {
  auto dom = CoefficientDomain::zp(3, 4);
  CHECK(dom.teichmuller(2).v == 80);  // -1 mod 81
  CHECK(dom.teichmuller(0).v == 0);
  CHECK(dom.teichmuller(1).v == 1);
}

TEST_CASE("teichmuller is a multiplicative section") {
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
    auto dom = CoefficientDomain::zp(p, 6);
    for (std::uint64_t c = 0; c < p; ++c) {
      Digit d = dom.teichmuller(c);
      CHECK(dom.digit_residue(d) == c);  // section property
      // the lift is fixed by x -> x^p
      Scalar pw{d.v};
      Scalar acc = pw;
      for (std::uint64_t k = 1; k < p; ++k) acc = dom.scalar_mul(acc, pw);
      CHECK(acc.v == d.v);
      for (std::uint64_t e = 0; e < p; ++e) {
        Digit prod = dom.digit_mul(d, dom.teichmuller(e));
        CHECK(dom.is_digit(Scalar{prod.v}));  // closure in iota(k)
        CHECK(dom.digit_residue(prod) == (c * e) % p);
      }
    }
  }
}

TEST_CASE("scalar standard form in Z_3") {
  auto dom = CoefficientDomain::zp(3, 4);
  Digit i2 = dom.teichmuller(2);

  auto sf2 = dom.scalar_standard_form(dom.from_int(2));
  REQUIRE(sf2.size() == 2);  // 2 = iota(2) + iota(1) p
  CHECK(sf2[0] == std::make_pair(0u, i2));
  CHECK(sf2[1] == std::make_pair(1u, Digit{1}));

  auto sf6 = dom.scalar_standard_form(dom.from_int(6));
  REQUIRE(sf6.size() == 2);
  CHECK(sf6[0] == std::make_pair(1u, i2));
  CHECK(sf6[1] == std::make_pair(2u, Digit{1}));

  CHECK(dom.scalar_standard_form(dom.from_int(0)).empty());
}

TEST_CASE("standard form round-trips") {
  auto dom = CoefficientDomain::zp(3, 8);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> pick(0, dom.modulus() - 1);
  for (int it = 0; it < 500; ++it) {
    Scalar a{pick(rng)};
    Scalar sum = dom.from_int(0);
    for (const auto& [j, d] : dom.scalar_standard_form(a)) {
      std::uint64_t pj = 1;
      for (unsigned k = 0; k < j; ++k) pj = pj * 3 % dom.modulus();
      sum = dom.scalar_add(sum, dom.scalar_mul(Scalar{d.v}, Scalar{pj}));
    }
    CHECK(sum == a);
  }
}

TEST_CASE("valuations") {
  auto dom = CoefficientDomain::zp(3, 6);
  CHECK(dom.scalar_valuation(dom.from_int(6)) == 1);
  CHECK(dom.scalar_valuation(dom.from_int(1)) == 0);
  CHECK(!dom.scalar_valuation(dom.from_int(0)).has_value());
  CHECK(dom.scalar_valuation(dom.from_int(54)) == 3);
}

TEST_CASE("digit products and sums in Z_3") {
  auto dom = CoefficientDomain::zp(3, 4);
  Digit i2 = dom.teichmuller(2);
  CHECK(dom.digit_mul(i2, i2) == Digit{1});  // (-1)(-1) = 1
  CHECK(dom.digit_mul(Digit{1}, i2) == i2);
  CHECK(dom.digit_mul(Digit{0}, i2) == Digit{0});

  // iota(1) + iota(1) = 2 is no digit: its standard form has digits at 0 and 1
  Scalar s = dom.scalar_add(Scalar{1}, Scalar{1});
  CHECK(!dom.is_digit(s));
  CHECK(dom.scalar_standard_form(s).size() == 2);

  CHECK(dom.scalar_add(dom.from_int(26), dom.from_int(55)) == dom.from_int(0));
  Scalar a = dom.from_int(17);
  CHECK(dom.scalar_add(a, dom.from_int(0)) == a);
}

// Properties (i)-(iv) of scalar standard forms: the valuation reads off the
// least nonzero digit, v(ab) = v(a) + v(b), and leading digits multiply and
// add correctly mod p.
TEST_CASE("standard form properties on random pairs mod 3^8") {
  auto dom = CoefficientDomain::zp(3, 8);
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::uint64_t> pick(0, dom.modulus() - 1);
  for (int it = 0; it < 1000; ++it) {
    Scalar a{pick(rng)}, b{pick(rng)};
    auto va = dom.scalar_valuation(a), vb = dom.scalar_valuation(b);
    auto sfa = dom.scalar_standard_form(a), sfb = dom.scalar_standard_form(b);

    // (i) v(a) = m iff the least emitted digit sits at m
    if (va) {
      REQUIRE(!sfa.empty());
      CHECK(sfa.front().first == *va);
    } else {
      CHECK(sfa.empty());
    }

    // (ii) + (iii) for the product
    Scalar c = dom.scalar_mul(a, b);
    auto vc = dom.scalar_valuation(c);
    if (va && vb && *va + *vb < dom.precision()) {
      REQUIRE(vc.has_value());
      CHECK(*vc == *va + *vb);
      auto sfc = dom.scalar_standard_form(c);
      std::uint64_t lead =
          dom.digit_residue(sfa.front().second) * dom.digit_residue(sfb.front().second) % 3;
      CHECK(dom.digit_residue(sfc.front().second) == lead);
    }

    // (iv) for the sum, when v(a) <= v(b)
    Scalar s = dom.scalar_add(a, b);
    if (va && (!vb || *va <= *vb)) {
      std::uint64_t am = dom.digit_residue(sfa.front().second);
      std::uint64_t bm = 0;
      for (const auto& [j, d] : sfb)
        if (j == *va) bm = dom.digit_residue(d);
      std::uint64_t expect = (am + bm) % 3;
      std::uint64_t got = 0;
      for (const auto& [j, d] : dom.scalar_standard_form(s))
        if (j == *va) got = dom.digit_residue(d);
      CHECK(got == expect);
    }
  }
}

TEST_CASE("finite field arithmetic F_{p^m}") {
  // exhaustive field axioms catch a reducible modulus via zero divisors
  for (auto [p, m] : std::vector<std::pair<std::uint64_t, unsigned>>{
           {2, 1}, {2, 4}, {2, 6}, {3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
    auto dom = CoefficientDomain::finite_field(p, m);
    std::uint64_t q = dom.residue_field_size();
    for (std::uint64_t a = 1; a < q; ++a) {
      std::uint64_t inv = dom.field_inv(a);
      CHECK(dom.field_mul(a, inv) == 1);
      // Frobenius fixed point: a^q = a
      std::uint64_t pw = a;
      for (std::uint64_t k = 1; k < q; ++k) pw = dom.field_mul(pw, a);
      CHECK(pw == a);
    }
    CHECK(dom.field_add(1, dom.field_neg(1)) == 0);
  }
}

TEST_CASE("case A scalars behave as digits") {
  auto dom = CoefficientDomain::finite_field(5);
  CHECK(dom.is_digit(dom.from_int(3)));
  auto sf = dom.scalar_standard_form(dom.from_int(7));
  REQUIRE(sf.size() == 1);
  CHECK(sf[0].first == 0);
  CHECK(sf[0].second.v == 2);
  CHECK(dom.scalar_valuation(dom.from_int(4)) == 0);
  CHECK(!dom.scalar_valuation(dom.from_int(0)).has_value());
}

TEST_CASE("domain construction errors") {
  CHECK_THROWS_AS(CoefficientDomain::zp(4, 3), error);
  CHECK_THROWS_AS(CoefficientDomain::zp(3, 0), error);
  CHECK_THROWS_AS(CoefficientDomain::finite_field(11, 3), error);  // no default irreducible
  CHECK_THROWS_AS(CoefficientDomain::zp(3, 4).digit_inv(Digit{0}), error);
}
