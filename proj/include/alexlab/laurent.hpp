#pragma once

// Multivariate integer Laurent polynomials Z[t_1^{±1}, ..., t_n^{±1}].
//
// A LaurentPoly is an exact ring element: arithmetic never normalizes.
// canonical() picks the representative of the unit class (±monomial
// multiples) with componentwise-minimal exponent 0 and a positive
// coefficient on the lexicographically largest exponent, so "equal up to a
// unit" is canonical(p) == canonical(q).

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "alexlab/errors.hpp"
#include "alexlab/exactla.hpp"

namespace alexlab {

using Exponent = std::vector<std::int64_t>;

class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, Integer>;

  explicit LaurentPoly(std::size_t nvars = 0) : nvars_(nvars) {}

  static LaurentPoly constant(std::size_t nvars, const Integer& c) {
    LaurentPoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }
  static LaurentPoly monomial(const Exponent& e, const Integer& c = 1) {
    LaurentPoly p(e.size());
    p.add_term(e, c);
    return p;
  }
  // t_i (0-based i).
  static LaurentPoly variable(std::size_t nvars, std::size_t i, std::int64_t power = 1) {
    Exponent e(nvars, 0);
    e.at(i) = power;
    return monomial(e);
  }
  // Univariate polynomial from ascending coefficients c_0 + c_1 t + ...
  static LaurentPoly univariate(const std::vector<long>& coeffs) {
    LaurentPoly p(1);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      p.add_term(Exponent{static_cast<std::int64_t>(i)}, Integer(coeffs[i]));
    return p;
  }

  void add_term(const Exponent& e, const Integer& c) {
    if (e.size() != nvars_) throw MathError("LaurentPoly: exponent length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 &&
            std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                        [](std::int64_t x) { return x == 0; }));
  }
  // Monomial times a coefficient ±1.
  bool is_unit() const {
    return terms_.size() == 1 && abs(terms_.begin()->second) == 1;
  }
  // Nonzero and a monomial: a unit of Q[H], i.e. trivial up to units and content.
  bool is_monomial() const { return terms_.size() == 1; }

  Integer constant_term() const {
    auto it = terms_.find(Exponent(nvars_, 0));
    return it == terms_.end() ? Integer(0) : it->second;
  }

  // Lexicographically largest term.
  const std::pair<const Exponent, Integer>& leading() const {
    if (terms_.empty()) throw MathError("LaurentPoly: zero polynomial has no leading term");
    return *terms_.rbegin();
  }

  Exponent min_exponent() const {
    Exponent m(nvars_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
      first = false;
    }
    return m;
  }
  Exponent max_exponent() const {
    Exponent m(nvars_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) m[i] = first ? e[i] : std::max(m[i], e[i]);
      first = false;
    }
    return m;
  }
  bool uses_variable(std::size_t i) const {
    return std::any_of(terms_.begin(), terms_.end(), [i](const auto& t) { return t.first[i] != 0; });
  }
  // Number of variables with nonconstant span (max - min exponent > 0).
  std::size_t active_variables() const {
    if (terms_.empty()) return 0;
    auto lo = min_exponent(), hi = max_exponent();
    std::size_t k = 0;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (lo[i] != hi[i]) ++k;
    return k;
  }

  // Multiply by the monomial t^shift.
  LaurentPoly shifted(const Exponent& shift) const {
    if (shift.size() != nvars_) throw MathError("LaurentPoly: shift length mismatch");
    LaurentPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      for (std::size_t i = 0; i < nvars_; ++i) f[i] += shift[i];
      r.terms_.emplace_hint(r.terms_.end(), std::move(f), c);
    }
    return r;
  }

  // Componentwise-minimal exponent 0, positive coefficient on the lex-largest term.
  LaurentPoly canonical() const {
    if (terms_.empty()) return *this;
    Exponent m = min_exponent();
    for (auto& x : m) x = -x;
    LaurentPoly r = shifted(m);
    if (r.leading().second < 0) r = -r;
    return r;
  }
  bool is_canonical() const { return *this == canonical(); }

  // Gcd of the coefficients (nonnegative; 0 for the zero polynomial).
  Integer content() const {
    Integer g = 0;
    for (const auto& [e, c] : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_ambient(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_ambient(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly& operator*=(const Integer& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= k;
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Integer& k) { return a *= k; }
  friend LaurentPoly operator*(const Integer& k, LaurentPoly a) { return a *= k; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_ambient(b);
    LaurentPoly r(a.nvars_);
    if (a.is_zero() || b.is_zero()) return r;
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly pow(unsigned k) const {
    LaurentPoly r = constant(nvars_, 1), base = *this;
    while (k) {
      if (k & 1u) r *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  void check_ambient(const LaurentPoly& o) const {
    if (o.nvars_ != nvars_) throw MathError("LaurentPoly: ambient variable count mismatch");
  }

 private:
  std::size_t nvars_;
  TermMap terms_;
};

inline bool equal_up_to_unit(const LaurentPoly& a, const LaurentPoly& b) {
  return a.canonical() == b.canonical();
}

// Variable names used by the text form: `t` when univariate, else t1..tn.
inline std::vector<std::string> default_variable_names(std::size_t n) {
  if (n == 1) return {"t"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("t" + std::to_string(i + 1));
  return names;
}

// Text form. Multivariate: terms ascending in lex order, `*` between
// factors, e.g. `1 - 3*t1*t2 + t1^2*t2^2`. Univariate: descending powers
// with juxtaposed coefficients, e.g. `t^2 - 3t + 1`.
inline std::string to_string(const LaurentPoly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  if (names.size() != p.nvars()) throw MathError("to_string: wrong number of variable names");
  const bool uni = p.nvars() == 1;
  std::vector<std::pair<Exponent, Integer>> terms(p.terms().begin(), p.terms().end());
  if (uni) std::reverse(terms.begin(), terms.end());
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += names[i];
      if (e[i] != 1) mono += '^' + std::to_string(e[i]);
    }
    Integer a = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
      os << a;
    } else if (a == 1) {
      os << mono;
    } else {
      os << a << (uni ? "" : "*") << mono;
    }
  }
  return os.str();
}

inline std::string to_string(const LaurentPoly& p) {
  return to_string(p, default_variable_names(p.nvars()));
}

// Parses the text form produced by to_string (and common variants such as
// `3*t`, `t^-1`, `-2`). Names default to default_variable_names(nvars).
inline LaurentPoly parse_laurent(std::string_view text, std::size_t nvars,
                                 std::vector<std::string> names = {}) {
  if (names.empty()) names = default_variable_names(nvars);
  LaurentPoly p(nvars);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_int = [&](bool allow_sign) -> std::optional<std::int64_t> {
    skip();
    std::size_t start = i;
    if (allow_sign && i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == digits) {
      i = start;
      return std::nullopt;
    }
    return std::stoll(std::string(text.substr(start, i - start)));
  };
  skip();
  if (text.substr(i) == "0") return p;
  bool first = true;
  while (true) {
    skip();
    if (i >= text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw ParseError("polynomial: expected '+' or '-' at offset " + std::to_string(i));
    }
    first = false;
    skip();
    Integer coeff = 1;
    std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i > digits) coeff = Integer(std::string(text.substr(digits, i - digits)));
    Exponent e(nvars, 0);
    bool need_factor = i == digits;
    for (;;) {
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
        need_factor = true;
      }
      std::size_t best = names.size();
      for (std::size_t v = 0; v < names.size(); ++v)
        if (text.substr(i, names[v].size()) == names[v] &&
            (best == names.size() || names[v].size() > names[best].size()))
          best = v;
      if (best == names.size()) {
        if (need_factor && i > digits && text[i - 1] == '*')
          throw ParseError("polynomial: dangling '*'");
        if (need_factor && i == digits) throw ParseError("polynomial: expected a term");
        break;
      }
      i += names[best].size();
      std::int64_t power = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        auto k = read_int(true);
        if (!k) throw ParseError("polynomial: malformed exponent");
        power = *k;
      }
      e[best] += power;
      need_factor = false;
    }
    p.add_term(e, sign * coeff);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Exact division and gcd.

namespace detail {

// Division in Z[t_1..t_n] (nonnegative exponents) by lex-leading terms.
inline std::optional<LaurentPoly> poly_exact_divide(LaurentPoly r, const LaurentPoly& d) {
  if (d.is_zero()) throw MathError("exact_divide: division by zero");
  LaurentPoly q(r.nvars());
  const auto& [ed, cd] = d.leading();
  const std::size_t n = r.nvars();
  Exponent e(n);
  while (!r.is_zero()) {
    const auto& [er, cr] = r.leading();
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = er[i] - ed[i];
      if (e[i] < 0) return std::nullopt;
    }
    if (!mpz_divisible_p(cr.get_mpz_t(), cd.get_mpz_t())) return std::nullopt;
    Integer c;
    mpz_divexact(c.get_mpz_t(), cr.get_mpz_t(), cd.get_mpz_t());
    LaurentPoly term = LaurentPoly::monomial(e, c);
    q += term;
    r -= term * d;
  }
  return q;
}

}  // namespace detail

// Exact quotient p / d in the Laurent ring, or nothing when d does not divide p.
inline std::optional<LaurentPoly> exact_divide(const LaurentPoly& p, const LaurentPoly& d) {
  p.check_ambient(d);
  if (d.is_zero()) throw MathError("exact_divide: division by zero");
  if (p.is_zero()) return LaurentPoly(p.nvars());
  Exponent mp = p.min_exponent(), md = d.min_exponent();
  Exponent np = mp, nd = md;
  for (auto& x : np) x = -x;
  for (auto& x : nd) x = -x;
  auto q = detail::poly_exact_divide(p.shifted(np), d.shifted(nd));
  if (!q) return std::nullopt;
  Exponent back(p.nvars());
  for (std::size_t i = 0; i < back.size(); ++i) back[i] = mp[i] - md[i];
  return q->shifted(back);
}

inline bool divides(const LaurentPoly& d, const LaurentPoly& p) {
  return exact_divide(p, d).has_value();
}

inline LaurentPoly exact_quotient(const LaurentPoly& p, const LaurentPoly& d) {
  auto q = exact_divide(p, d);
  if (!q) throw MathError("exact_quotient: divisor does not divide dividend");
  return *std::move(q);
}

namespace detail {

inline std::atomic<std::size_t>& gcd_limit_storage() {
  static std::atomic<std::size_t> limit{6};
  return limit;
}

// Polynomial in a main variable v; coefficient i (free of v) multiplies v^i.
using Dense = std::vector<LaurentPoly>;

inline Dense to_dense(const LaurentPoly& p, std::size_t v) {
  Dense out;
  for (const auto& [e, c] : p.terms()) {
    auto deg = static_cast<std::size_t>(e[v]);
    if (out.size() <= deg) out.resize(deg + 1, LaurentPoly(p.nvars()));
    Exponent f = e;
    f[v] = 0;
    out[deg].add_term(f, c);
  }
  return out;
}

inline LaurentPoly from_dense(const Dense& d, std::size_t v, std::size_t nvars) {
  LaurentPoly p(nvars);
  for (std::size_t k = 0; k < d.size(); ++k)
    for (const auto& [e, c] : d[k].terms()) {
      Exponent f = e;
      f[v] = static_cast<std::int64_t>(k);
      p.add_term(f, c);
    }
  return p;
}

inline void trim(Dense& d) {
  while (!d.empty() && d.back().is_zero()) d.pop_back();
}

// lc(b)^(deg a - deg b + 1) · a  mod  b.
inline Dense pseudo_remainder(Dense r, const Dense& b) {
  const std::size_t db = b.size() - 1;
  const LaurentPoly& lb = b.back();
  std::size_t steps = r.size() - db;
  std::size_t used = 0;
  while (!r.empty() && r.size() - 1 >= db) {
    LaurentPoly lr = r.back();
    std::size_t shift = r.size() - 1 - db;
    for (auto& c : r) c *= lb;
    for (std::size_t k = 0; k <= db; ++k) r[k + shift] -= lr * b[k];
    r.pop_back();
    trim(r);
    ++used;
  }
  if (used < steps) {
    LaurentPoly f = lb.pow(static_cast<unsigned>(steps - used));
    for (auto& c : r) c *= f;
  }
  return r;
}

inline LaurentPoly sign_normalized(LaurentPoly p) {
  if (!p.is_zero() && p.leading().second < 0) p = -p;
  return p;
}

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

inline LaurentPoly dense_content(const Dense& d, std::size_t nvars) {
  LaurentPoly g(nvars);
  for (const auto& c : d) {
    if (c.is_zero()) continue;
    g = poly_gcd(g, c);
    if (g.is_constant() && abs(g.constant_term()) == 1) break;
  }
  return g;
}

inline Dense dense_divide(const Dense& d, const LaurentPoly& c) {
  Dense out;
  out.reserve(d.size());
  for (const auto& x : d) {
    auto q = poly_exact_divide(x, c);
    if (!q) throw MathError("gcd: internal inexact division");
    out.push_back(*std::move(q));
  }
  return out;
}

// Gcd in Z[t_1..t_n] for polynomials with nonnegative exponents; result has
// a positive lex-leading coefficient. Recursion on the highest variable
// present, with content/primitive-part splitting and a subresultant PRS.
inline LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  const std::size_t n = a.nvars();
  if (a.is_zero()) return sign_normalized(b);
  if (b.is_zero()) return sign_normalized(a);
  if (a.is_constant() && b.is_constant()) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.constant_term().get_mpz_t(), b.constant_term().get_mpz_t());
    return LaurentPoly::constant(n, g);
  }
  std::size_t v = n;
  for (std::size_t i = n; i-- > 0;)
    if (a.uses_variable(i) || b.uses_variable(i)) {
      v = i;
      break;
    }
  Dense da = to_dense(a, v), db = to_dense(b, v);
  if (da.size() == 1) return poly_gcd(a, dense_content(db, n));
  if (db.size() == 1) return poly_gcd(dense_content(da, n), b);

  LaurentPoly ca = dense_content(da, n), cb = dense_content(db, n);
  LaurentPoly content = poly_gcd(ca, cb);
  Dense A = dense_divide(da, ca), B = dense_divide(db, cb);
  if (A.size() < B.size()) std::swap(A, B);

  LaurentPoly g = LaurentPoly::constant(n, 1), h = LaurentPoly::constant(n, 1);
  bool coprime = false;
  for (;;) {
    const std::size_t delta = A.size() - B.size();
    Dense R = pseudo_remainder(A, B);
    if (R.empty()) break;
    if (R.size() == 1) {
      coprime = true;
      break;
    }
    A = std::move(B);
    LaurentPoly denom = g * h.pow(static_cast<unsigned>(delta));
    B = dense_divide(R, denom);
    g = A.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      auto q = poly_exact_divide(g.pow(static_cast<unsigned>(delta)),
                                 h.pow(static_cast<unsigned>(delta - 1)));
      if (!q) throw MathError("gcd: internal inexact subresultant step");
      h = *std::move(q);
    }
  }
  if (coprime) return sign_normalized(content);
  Dense prim = dense_divide(B, dense_content(B, n));
  return sign_normalized(content * from_dense(prim, v, n));
}

}  // namespace detail

// Maximum number of active variables gcd accepts (default 6).
inline std::size_t gcd_variable_limit() { return detail::gcd_limit_storage().load(); }
inline void set_gcd_variable_limit(std::size_t limit) { detail::gcd_limit_storage().store(limit); }

// Gcd in the Laurent ring, canonical. gcd(p, 0) = canonical(p), gcd(0, 0) = 0.
inline LaurentPoly gcd(const LaurentPoly& p, const LaurentPoly& q) {
  p.check_ambient(q);
  if (p.is_zero()) return q.canonical();
  if (q.is_zero()) return p.canonical();
  std::size_t active = 0;
  const auto lp = p.min_exponent(), hp = p.max_exponent();
  const auto lq = q.min_exponent(), hq = q.max_exponent();
  for (std::size_t i = 0; i < p.nvars(); ++i)
    if (lp[i] != hp[i] || lq[i] != hq[i]) ++active;
  if (active > gcd_variable_limit())
    throw LimitError("gcd: " + std::to_string(active) + " active variables exceed the limit of " +
                     std::to_string(gcd_variable_limit()));
  LaurentPoly a = p.canonical(), b = q.canonical();
  return detail::poly_gcd(a, b).canonical();
}

// ---------------------------------------------------------------------------
// Newton polytope data.

// Integer rank of {s_i - s_0} over the support.
inline std::size_t newton_dim(const LaurentPoly& p) {
  if (p.is_zero()) throw MathError("newton_dim: zero polynomial");
  const auto& terms = p.terms();
  const Exponent& base = terms.begin()->first;
  IntMatrix diffs(terms.size() - 1, p.nvars());
  std::size_t r = 0;
  for (auto it = std::next(terms.begin()); it != terms.end(); ++it, ++r)
    for (std::size_t j = 0; j < p.nvars(); ++j) diffs(r, j) = it->first[j] - base[j];
  return integer_rank(diffs);
}

struct UnivariateForm {
  Exponent direction;  // primitive, first nonzero entry positive
  LaurentPoly poly;    // in one variable, canonical
};

// When the support is collinear, the primitive direction h and p(t) with
// p(t^h) equal to the input up to a unit. Point supports use (1,0,...,0).
inline std::optional<UnivariateForm> line_support(const LaurentPoly& p) {
  if (p.is_zero()) throw MathError("line_support: zero polynomial");
  const std::size_t n = p.nvars();
  const std::size_t dim = newton_dim(p);
  if (dim > 1) return std::nullopt;
  UnivariateForm out;
  out.direction.assign(n, 0);
  if (dim == 0) {
    if (n > 0) out.direction[0] = 1;
    out.poly = LaurentPoly::constant(1, abs(p.terms().begin()->second));
    return out;
  }
  const Exponent& base = p.terms().begin()->first;
  Exponent dir;
  for (const auto& [e, c] : p.terms())
    if (e != base) {
      dir = e;
      break;
    }
  Integer g = 0;
  for (std::size_t i = 0; i < n; ++i) {
    dir[i] -= base[i];
    Integer x(static_cast<long>(dir[i]));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  const long gl = g.get_si();
  for (auto& x : dir) x /= gl;
  auto lead = std::find_if(dir.begin(), dir.end(), [](std::int64_t x) { return x != 0; });
  if (*lead < 0)
    for (auto& x : dir) x = -x;
  const std::size_t k = static_cast<std::size_t>(lead - dir.begin());
  LaurentPoly uni(1);
  for (const auto& [e, c] : p.terms()) uni.add_term(Exponent{(e[k] - base[k]) / dir[k]}, c);
  out.direction = dir;
  out.poly = uni.canonical();
  return out;
}

// Substitutes t -> t^h into a univariate polynomial, giving an n-variable one.
inline LaurentPoly substitute_direction(const LaurentPoly& uni, const Exponent& h) {
  if (uni.nvars() != 1) throw MathError("substitute_direction: expected a univariate polynomial");
  LaurentPoly out(h.size());
  Exponent e(h.size());
  for (const auto& [k, c] : uni.terms()) {
    for (std::size_t i = 0; i < h.size(); ++i) e[i] = k[0] * h[i];
    out.add_term(e, c);
  }
  return out;
}

}  // namespace alexlab
