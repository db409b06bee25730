#include "sps/coeff.hpp"

#include <array>

namespace sps {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 checked_pow(u64 p, unsigned e, const char* what) {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > UINT64_MAX / p) throw error(std::string(what) + " overflows 64 bits");
    r *= p;
  }
  return r;
}

// Built-in monic irreducibles over F_p, coefficients c_0..c_m, for p^m <= 64.
std::vector<u64> default_irreducible(u64 p, unsigned m) {
  struct Entry {
    u64 p;
    unsigned m;
    std::array<u64, 7> c;
  };
  static const Entry table[] = {
      {2, 2, {1, 1, 1}},          {2, 3, {1, 1, 0, 1}},       {2, 4, {1, 1, 0, 0, 1}},
      {2, 5, {1, 0, 1, 0, 0, 1}}, {2, 6, {1, 1, 0, 0, 0, 0, 1}},
      {3, 2, {1, 0, 1}},          {3, 3, {1, 2, 0, 1}},
      {5, 2, {2, 0, 1}},          {7, 2, {1, 0, 1}},
  };
  for (const auto& e : table)
    if (e.p == p && e.m == m) return std::vector<u64>(e.c.begin(), e.c.begin() + m + 1);
  throw error("no default irreducible for p=" + std::to_string(p) + ", m=" + std::to_string(m) +
              "; supply one explicitly");
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

CoefficientDomain CoefficientDomain::finite_field(u64 p, unsigned m,
                                                  std::vector<u64> irreducible) {
  if (!is_prime(p)) throw error("p = " + std::to_string(p) + " is not prime");
  if (m < 1) throw error("extension degree must be >= 1");
  CoefficientDomain d;
  d.case_ = CoeffCase::A;
  d.p_ = p;
  d.m_ = m;
  d.precision_ = 1;
  d.q_ = checked_pow(p, m, "p^m");
  if (m > 1) {
    d.irred_ = irreducible.empty() ? default_irreducible(p, m) : std::move(irreducible);
    if (d.irred_.size() != m + 1 || d.irred_[m] % p != 1)
      throw error("irreducible must be monic of degree m");
    for (auto& c : d.irred_) c %= p;
  }
  return d;
}

CoefficientDomain CoefficientDomain::zp(u64 p, unsigned precision) {
  if (!is_prime(p)) throw error("p = " + std::to_string(p) + " is not prime");
  if (precision < 1) throw error("precision must be >= 1");
  CoefficientDomain d;
  d.case_ = CoeffCase::B;
  d.p_ = p;
  d.m_ = 1;
  d.precision_ = precision;
  d.pN_ = checked_pow(p, precision, "p^N");
  d.q_ = p;
  // Teichmuller table: the fixed point of c -> c^p mod p^N.
  d.teich_table_.resize(p);
  for (u64 c = 0; c < p; ++c) {
    u64 t = c % d.pN_;
    for (unsigned it = 0; it < 64 * precision; ++it) {
      u64 next = powmod(t, p, d.pN_);
      if (next == t) break;
      t = next;
    }
    d.teich_table_[c] = t;
  }
  return d;
}

bool CoefficientDomain::same_as(const CoefficientDomain& o) const {
  return case_ == o.case_ && p_ == o.p_ && m_ == o.m_ && precision_ == o.precision_ &&
         irred_ == o.irred_;
}

// -- F_{p^m} arithmetic on packed base-p values ------------------------------

std::uint64_t CoefficientDomain::field_add(u64 a, u64 b) const {
  u64 r = 0, mult = 1;
  for (unsigned i = 0; i < m_; ++i) {
    r += ((a % p_ + b % p_) % p_) * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return r;
}

std::uint64_t CoefficientDomain::field_neg(u64 a) const {
  u64 r = 0, mult = 1;
  for (unsigned i = 0; i < m_; ++i) {
    r += ((p_ - a % p_) % p_) * mult;
    a /= p_;
    mult *= p_;
  }
  return r;
}

std::uint64_t CoefficientDomain::field_mul(u64 a, u64 b) const {
  if (m_ == 1) return mulmod(a, b, p_);
  // schoolbook product, then reduce by the monic irreducible
  std::vector<u64> prod(2 * m_ - 1, 0);
  std::vector<u64> av(m_), bv(m_);
  for (unsigned i = 0; i < m_; ++i, a /= p_) av[i] = a % p_;
  for (unsigned i = 0; i < m_; ++i, b /= p_) bv[i] = b % p_;
  for (unsigned i = 0; i < m_; ++i)
    for (unsigned j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + av[i] * bv[j]) % p_;
  for (unsigned d = 2 * m_ - 2; d >= m_; --d) {
    u64 c = prod[d];
    if (c) {
      prod[d] = 0;
      for (unsigned j = 0; j < m_; ++j)
        prod[d - m_ + j] = (prod[d - m_ + j] + (p_ - irred_[j] % p_) % p_ * c) % p_;
    }
    if (d == m_) break;
  }
  u64 r = 0, mult = 1;
  for (unsigned i = 0; i < m_; ++i) {
    r += prod[i] * mult;
    mult *= p_;
  }
  return r;
}

std::uint64_t CoefficientDomain::field_inv(u64 a) const {
  if (a == 0) throw error("inverse of zero field element");
  // a^(q-2) in F_q
  u64 r = 1, base = a, e = q_ - 2;
  while (e) {
    if (e & 1) r = field_mul(r, base);
    base = field_mul(base, base);
    e >>= 1;
  }
  return r;
}

// -- scalars -----------------------------------------------------------------

Scalar CoefficientDomain::from_int(long long c) const {
  if (case_ == CoeffCase::B) {
    long long m = static_cast<long long>(pN_);
    long long r = c % m;
    if (r < 0) r += m;
    return Scalar{static_cast<u64>(r)};
  }
  long long r = c % static_cast<long long>(p_);
  if (r < 0) r += static_cast<long long>(p_);
  return Scalar{static_cast<u64>(r)};  // prime-field embedding
}

Scalar CoefficientDomain::scalar_add(Scalar a, Scalar b) const {
  if (case_ == CoeffCase::B) return Scalar{(a.v + b.v) % pN_};
  return Scalar{field_add(a.v, b.v)};
}

Scalar CoefficientDomain::scalar_sub(Scalar a, Scalar b) const {
  return scalar_add(a, scalar_neg(b));
}

Scalar CoefficientDomain::scalar_neg(Scalar a) const {
  if (case_ == CoeffCase::B) return Scalar{a.v ? pN_ - a.v : 0};
  return Scalar{field_neg(a.v)};
}

Scalar CoefficientDomain::scalar_mul(Scalar a, Scalar b) const {
  if (case_ == CoeffCase::B) return Scalar{mulmod(a.v, b.v, pN_)};
  return Scalar{field_mul(a.v, b.v)};
}

std::optional<unsigned> CoefficientDomain::scalar_valuation(Scalar a) const {
  if (a.v == 0) return std::nullopt;
  if (case_ == CoeffCase::A) return 0;
  unsigned v = 0;
  u64 x = a.v;
  while (x % p_ == 0) {
    x /= p_;
    ++v;
  }
  return v;
}

std::vector<std::pair<unsigned, Digit>> CoefficientDomain::scalar_standard_form(Scalar a) const {
  std::vector<std::pair<unsigned, Digit>> out;
  if (case_ == CoeffCase::A) {
    if (a.v) out.emplace_back(0, Digit{a.v});
    return out;
  }
  u64 x = a.v;
  for (unsigned j = 0; j < precision_ && x; ++j) {
    u64 c = x % p_;
    if (c) {
      Digit d{teich_table_[c]};
      out.emplace_back(j, d);
      x = (x + pN_ - d.v) % pN_;
    }
    x /= p_;  // exact: x == d.v mod p was peeled off
  }
  return out;
}

// -- digits --------------------------------------------------------------------

Digit CoefficientDomain::teichmuller(u64 residue) const {
  if (case_ == CoeffCase::A) {
    if (residue >= q_) throw error("residue out of range");
    return Digit{residue};
  }
  if (residue >= p_) throw error("residue out of range");
  return Digit{teich_table_[residue]};
}

bool CoefficientDomain::is_digit(Scalar a) const {
  if (case_ == CoeffCase::A) return true;
  return a.v == 0 || teich_table_[a.v % p_] == a.v;
}

Digit CoefficientDomain::digit_mul(Digit a, Digit b) const {
  if (case_ == CoeffCase::B) return Digit{mulmod(a.v, b.v, pN_)};
  return Digit{field_mul(a.v, b.v)};
}

Digit CoefficientDomain::digit_neg(Digit a) const {
  if (case_ == CoeffCase::B) {
    // -iota(c) = iota(-c): the section is closed under negation
    return Digit{a.v ? pN_ - a.v : 0};
  }
  return Digit{field_neg(a.v)};
}

Digit CoefficientDomain::digit_inv(Digit a) const {
  if (a.v == 0) throw error("inverse of zero digit");
  if (case_ == CoeffCase::A) return Digit{field_inv(a.v)};
  u64 c = a.v % p_;
  u64 cinv = powmod(c, p_ - 2, p_);
  return Digit{teich_table_[cinv]};
}

Digit CoefficientDomain::digit_one() const { return Digit{1}; }

std::uint64_t CoefficientDomain::digit_residue(Digit a) const {
  if (case_ == CoeffCase::A) return a.v;
  return a.v % p_;
}

}  // namespace sps
