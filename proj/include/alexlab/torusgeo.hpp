#pragma once

// Torsion-translated algebraic subtori of (C^*)^n.
//
// A subtorus T is stored through its saturated lattice of exponent
// equations: T = {z : z^u = 1 for all u in L}. Saturation makes T
// connected, so T1·T2 is the annihilator of L1 ∩ L2 and T1 ∩ T2 has
// dimension n - rank(L1 + L2). A translate rho in (Q/Z)^n is stored
// additively: z_i = exp(2 pi i rho_i).

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "alexlab/errors.hpp"
#include "alexlab/exactla.hpp"

namespace alexlab {

inline Rational mod_one(Rational q) {
  q.canonicalize();
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - fl;
}

class TranslatedTorus {
 public:
  TranslatedTorus(Lattice equations, std::vector<Rational> translate)
      : equations_(std::move(equations)), translate_(std::move(translate)) {}

  std::size_t ambient() const noexcept { return equations_.ambient(); }
  std::size_t dim() const noexcept { return ambient() - equations_.rank(); }
  const Lattice& equations() const noexcept { return equations_; }
  const std::vector<Rational>& translate() const noexcept { return translate_; }

  // Membership of the torsion point exp(2 pi i x).
  bool contains(const std::vector<Rational>& x) const {
    if (x.size() != ambient()) throw MathError("TranslatedTorus: point has wrong length");
    const IntMatrix& b = equations_.basis();
    for (std::size_t r = 0; r < b.rows(); ++r) {
      Rational s = 0;
      for (std::size_t j = 0; j < ambient(); ++j) s += b(r, j) * (x[j] - translate_[j]);
      s.canonicalize();
      if (s.get_den() != 1) return false;
    }
    return true;
  }

 private:
  Lattice equations_;
  std::vector<Rational> translate_;
};

// Rows may be dependent or non-primitive; the equation lattice is saturated
// and the translate reduced into [0, 1).
inline TranslatedTorus make_torus(std::size_t n, const std::vector<IntVector>& rows,
                                  std::vector<Rational> translate) {
  for (const auto& r : rows)
    if (r.size() != n) throw MathError("make_torus: equation row has wrong length");
  if (translate.empty()) translate.assign(n, Rational(0));
  if (translate.size() != n) throw MathError("make_torus: translate has wrong length");
  for (auto& q : translate) q = mod_one(q);
  Lattice eq = saturate(Lattice::from_generators(n, rows));
  return TranslatedTorus(std::move(eq), std::move(translate));
}

struct IntersectionReport {
  bool meets = false;
  std::size_t dim = 0;  // meaningful only when meets
  bool parallel = false;
};

inline IntersectionReport intersect(const TranslatedTorus& a, const TranslatedTorus& b) {
  if (a.ambient() != b.ambient()) throw MathError("intersect: ambient mismatch");
  const std::size_t n = a.ambient();
  IntersectionReport out;
  out.parallel = a.equations() == b.equations();
  // rho_a rho_b^{-1} must lie in T_a T_b = Ann(L_a ∩ L_b).
  Lattice common = lattice_intersection(a.equations(), b.equations());
  out.meets = true;
  for (std::size_t r = 0; r < common.rank() && out.meets; ++r) {
    Rational s = 0;
    for (std::size_t j = 0; j < n; ++j) s += common.basis()(r, j) * (a.translate()[j] - b.translate()[j]);
    s.canonicalize();
    if (s.get_den() != 1) out.meets = false;
  }
  out.dim = n - lattice_sum(a.equations(), b.equations()).rank();
  return out;
}

// `n=2;rows=(1,0),(0,1);q=(1/2,0)`; `rows=` may be empty and `q` omitted.
inline TranslatedTorus parse_torus_spec(std::string_view spec) {
  std::optional<std::size_t> n;
  std::vector<IntVector> rows;
  std::vector<Rational> q;
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto tuples = [&](std::string_view s) {
    std::vector<std::vector<std::string>> out;
    s = trim(s);
    while (!s.empty()) {
      if (s.front() == ',') {
        s = trim(s.substr(1));
        continue;
      }
      if (s.front() != '(') throw ParseError("torus spec: expected '(' in '" + std::string(s) + "'");
      auto close = s.find(')');
      if (close == std::string_view::npos) throw ParseError("torus spec: unbalanced parenthesis");
      std::vector<std::string> items;
      std::string_view body = s.substr(1, close - 1);
      std::size_t start = 0;
      for (;;) {
        auto comma = body.find(',', start);
        auto item = trim(body.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                             : comma - start));
        if (!item.empty()) items.emplace_back(item);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      out.push_back(std::move(items));
      s = trim(s.substr(close + 1));
    }
    return out;
  };
  std::size_t start = 0;
  while (start <= spec.size()) {
    auto semi = spec.find(';', start);
    auto field = trim(spec.substr(start, semi == std::string_view::npos ? std::string_view::npos
                                                                          : semi - start));
    start = semi == std::string_view::npos ? spec.size() + 1 : semi + 1;
    if (field.empty()) continue;
    auto eq = field.find('=');
    if (eq == std::string_view::npos) throw ParseError("torus spec: missing '=' in '" + std::string(field) + "'");
    auto key = trim(field.substr(0, eq));
    auto value = trim(field.substr(eq + 1));
    try {
      if (key == "n") {
        n = std::stoul(std::string(value));
      } else if (key == "rows") {
        for (const auto& t : tuples(value)) {
          IntVector r;
          for (const auto& x : t) r.emplace_back(x);
          rows.push_back(std::move(r));
        }
      } else if (key == "q") {
        auto t = tuples(value);
        if (t.size() != 1) throw ParseError("torus spec: q must be a single tuple");
        for (const auto& x : t[0]) {
          Rational r(x);
          if (r.get_den() == 0) throw std::invalid_argument(x);
          r.canonicalize();
          q.push_back(r);
        }
      } else {
        throw ParseError("torus spec: unknown key '" + std::string(key) + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("torus spec: malformed number in '" + std::string(field) + "'");
    }
  }
  if (!n) throw ParseError("torus spec: missing n");
  try {
    return make_torus(*n, rows, q);
  } catch (const MathError& e) {
    throw ParseError(std::string("torus spec: ") + e.what());
  }
}

}  // namespace alexlab
