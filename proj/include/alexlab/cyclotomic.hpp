#pragma once

// Cyclotomic polynomials, trial-division cyclotomic decomposition, and exact
// arithmetic in Q(zeta_m) for evaluating Laurent polynomials at torsion
// characters.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "alexlab/errors.hpp"
#include "alexlab/laurent.hpp"

namespace alexlab {

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

// Phi_d as a univariate LaurentPoly, via t^d - 1 = prod_{e | d} Phi_e.
inline LaurentPoly cyclotomic_polynomial(std::uint64_t d) {
  if (d == 0) throw MathError("cyclotomic_polynomial: index must be positive");
  static std::mutex mu;
  static std::map<std::uint64_t, LaurentPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(d); it != cache.end()) return it->second;
  }
  LaurentPoly p = LaurentPoly::variable(1, 0, static_cast<std::int64_t>(d)) -
                  LaurentPoly::constant(1, 1);
  for (std::uint64_t e = 1; e < d; ++e)
    if (d % e == 0) p = exact_quotient(p, cyclotomic_polynomial(e));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(d, p);
  return p;
}

struct CyclotomicDecomposition {
  Integer content;                                              // positive
  std::vector<std::pair<std::uint64_t, unsigned>> factors;      // (d, multiplicity), d ascending
  LaurentPoly remainder;                                        // canonical; 1 when fully cyclotomic

  bool fully_cyclotomic() const { return remainder == LaurentPoly::constant(1, 1); }
};

inline std::int64_t degree_span(const LaurentPoly& uni) {
  if (uni.is_zero()) return 0;
  return uni.max_exponent()[0] - uni.min_exponent()[0];
}

// Splits a univariate p into c · prod Phi_d^m · remainder (up to a unit),
// trying every d with phi(d) <= deg; phi(d) >= sqrt(d/2) bounds d <= 2·deg^2.
inline CyclotomicDecomposition cyclotomic_decompose(const LaurentPoly& p) {
  if (p.nvars() != 1) throw MathError("cyclotomic_decompose: expected a univariate polynomial");
  if (p.is_zero()) throw MathError("cyclotomic_decompose: zero polynomial");
  CyclotomicDecomposition out;
  LaurentPoly r = p.canonical();
  out.content = r.content();
  {
    LaurentPoly scaled(1);
    for (const auto& [e, c] : r.terms()) {
      Integer q;
      mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), out.content.get_mpz_t());
      scaled.add_term(e, q);
    }
    r = scaled;
  }
  const auto deg = static_cast<std::uint64_t>(degree_span(r));
  const std::uint64_t bound = 2 * deg * deg;
  for (std::uint64_t d = 1; d <= bound; ++d) {
    if (euler_phi(d) > static_cast<std::uint64_t>(degree_span(r))) continue;
    LaurentPoly phi = cyclotomic_polynomial(d);
    unsigned mult = 0;
    while (degree_span(r) >= static_cast<std::int64_t>(euler_phi(d))) {
      auto q = exact_divide(r, phi);
      if (!q) break;
      r = *std::move(q);
      ++mult;
    }
    if (mult) out.factors.emplace_back(d, mult);
  }
  out.remainder = r.canonical();
  return out;
}

// Q(zeta_m) = Q[x]/Phi_m(x); elements are coefficient vectors of length phi(m).
class CyclotomicField {
 public:
  using Element = std::vector<Rational>;

  explicit CyclotomicField(std::uint64_t order) : order_(order) {
    if (order == 0) throw MathError("CyclotomicField: order must be positive");
    LaurentPoly phi = cyclotomic_polynomial(order);
    degree_ = static_cast<std::size_t>(euler_phi(order));
    modulus_.assign(degree_ + 1, Integer(0));
    for (const auto& [e, c] : phi.terms()) modulus_[static_cast<std::size_t>(e[0])] = c;
  }

  std::uint64_t order() const noexcept { return order_; }
  std::size_t degree() const noexcept { return degree_; }

  Element zero() const { return Element(degree_, Rational(0)); }
  Element one() const { return from_integer(1); }
  Element from_integer(const Integer& c) const {
    Element e = zero();
    e[0] = c;
    return e;
  }
  // zeta^k for any integer k.
  Element zeta_power(std::int64_t k) const {
    auto m = static_cast<std::int64_t>(order_);
    std::int64_t r = ((k % m) + m) % m;
    std::vector<Rational> v(static_cast<std::size_t>(r) + 1, Rational(0));
    v.back() = 1;
    return reduce(std::move(v));
  }

  bool is_zero(const Element& a) const {
    for (const auto& x : a)
      if (x != 0) return false;
    return true;
  }

  Element add(const Element& a, const Element& b) const {
    Element c = a;
    for (std::size_t i = 0; i < degree_; ++i) c[i] += b[i];
    return c;
  }
  Element sub(const Element& a, const Element& b) const {
    Element c = a;
    for (std::size_t i = 0; i < degree_; ++i) c[i] -= b[i];
    return c;
  }
  Element mul(const Element& a, const Element& b) const {
    std::vector<Rational> prod(2 * degree_ > 0 ? 2 * degree_ - 1 : 0, Rational(0));
    for (std::size_t i = 0; i < degree_; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < degree_; ++j) prod[i + j] += a[i] * b[j];
    }
    return reduce(std::move(prod));
  }

  // Inverse by the extended Euclidean algorithm in Q[x].
  Element inverse(const Element& a) const {
    if (is_zero(a)) throw MathError("CyclotomicField: inverse of zero");
    using Poly = std::vector<Rational>;
    auto trimmed = [](Poly p) {
      while (!p.empty() && p.back() == 0) p.pop_back();
      return p;
    };
    auto sub_scaled = [](Poly& r, const Poly& b, const Rational& f, std::size_t shift) {
      if (r.size() < b.size() + shift) r.resize(b.size() + shift, Rational(0));
      for (std::size_t k = 0; k < b.size(); ++k) r[k + shift] -= f * b[k];
    };
    Poly r0(modulus_.begin(), modulus_.end()), r1 = trimmed(a);
    Poly s0{}, s1{Rational(1)};
    while (r1.size() > 1) {
      Poly q, r = r0;
      q.assign(r0.size() - r1.size() + 1, Rational(0));
      while (r.size() >= r1.size()) {
        std::size_t shift = r.size() - r1.size();
        Rational f = r.back() / r1.back();
        q[shift] = f;
        sub_scaled(r, r1, f, shift);
        r = trimmed(r);
        if (r.empty()) break;
      }
      Poly s = s0;
      for (std::size_t i = 0; i < q.size(); ++i)
        if (q[i] != 0) sub_scaled(s, s1, q[i], i);
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = trimmed(std::move(s));
    }
    // r1 is a nonzero constant since Phi_m is irreducible.
    Rational c = r1.at(0);
    for (auto& x : s1) x /= c;
    return reduce(std::move(s1));
  }

  std::string to_string(const Element& a) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = degree_; i-- > 0;) {
      if (a[i] == 0) continue;
      Rational mag = abs(a[i]);
      if (first) {
        if (a[i] < 0) os << '-';
      } else {
        os << (a[i] < 0 ? " - " : " + ");
      }
      first = false;
      if (i == 0) {
        os << mag;
      } else {
        if (mag != 1) os << mag << '*';
        os << 'z';
        if (i > 1) os << '^' << i;
      }
    }
    return first ? "0" : os.str();
  }

 private:
  Element reduce(std::vector<Rational> v) const {
    for (std::size_t k = v.size(); k-- > degree_;) {
      if (v[k] == 0) continue;
      Rational f = v[k];
      for (std::size_t j = 0; j <= degree_; ++j) v[k - degree_ + j] -= f * modulus_[j];
    }
    v.resize(degree_, Rational(0));
    for (auto& x : v) x.canonicalize();
    return v;
  }

  std::uint64_t order_;
  std::size_t degree_ = 0;
  std::vector<Integer> modulus_;  // Phi_m, ascending, monic
};

// A torsion character of H = Z^n: rho_i in [0, 1), z_i = exp(2*pi*i*rho_i).
class CharacterPoint {
 public:
  CharacterPoint() = default;
  explicit CharacterPoint(std::vector<Rational> rho) : rho_(std::move(rho)) {
    for (auto& r : rho_) {
      r.canonicalize();
      Integer fl;
      mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
      r -= fl;
    }
  }

  std::size_t size() const noexcept { return rho_.size(); }
  const std::vector<Rational>& values() const noexcept { return rho_; }
  bool is_trivial() const {
    for (const auto& r : rho_)
      if (r != 0) return false;
    return true;
  }
  // lcm of the denominators.
  std::uint64_t order() const {
    Integer l = 1;
    for (const auto& r : rho_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den_mpz_t());
    if (!l.fits_ulong_p()) throw LimitError("CharacterPoint: torsion order too large");
    return l.get_ui();
  }
  // Exponent k in [0, m) with z^e = zeta_m^k; m must be a multiple of order().
  std::int64_t zeta_exponent(const Exponent& e, std::uint64_t m) const {
    if (e.size() != rho_.size()) throw MathError("CharacterPoint: ambient mismatch");
    if (m == 0 || m % order() != 0) throw MathError("CharacterPoint: incompatible field order");
    Integer k = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      Integer num = rho_[i].get_num() * static_cast<long>(e[i]) * static_cast<unsigned long>(m);
      k += num / rho_[i].get_den();
    }
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), k.get_mpz_t(), m);
    return r.get_si();
  }

 private:
  std::vector<Rational> rho_;
};

struct CyclotomicValue {
  std::uint64_t order = 1;
  CyclotomicField::Element coeffs;  // in the power basis 1, z, ..., z^{phi(m)-1}

  bool is_zero() const {
    for (const auto& c : coeffs)
      if (c != 0) return false;
    return true;
  }
};

inline CyclotomicField::Element evaluate_in(const CyclotomicField& field, const LaurentPoly& p,
                                            const CharacterPoint& rho) {
  if (p.nvars() != rho.size()) throw MathError("evaluate_at_character: ambient mismatch");
  const auto m = static_cast<std::int64_t>(field.order());
  std::vector<Integer> bucket(static_cast<std::size_t>(m), Integer(0));
  for (const auto& [e, c] : p.terms()) {
    std::int64_t k = rho.zeta_exponent(e, field.order());
    bucket[static_cast<std::size_t>(k)] += c;
  }
  CyclotomicField::Element acc = field.zero();
  for (std::int64_t k = 0; k < m; ++k) {
    const auto& c = bucket[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    auto z = field.zeta_power(k);
    for (auto& x : z) x *= c;
    acc = field.add(acc, z);
  }
  return acc;
}

// Exact value of p at rho in Q(zeta_m), m the torsion order of rho.
inline CyclotomicValue evaluate_at_character(const LaurentPoly& p, const CharacterPoint& rho) {
  CyclotomicField field(rho.order());
  return {field.order(), evaluate_in(field, p, rho)};
}

}  // namespace alexlab
