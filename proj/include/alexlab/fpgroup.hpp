#pragma once

// Finitely presented groups: the `.fp` text format, free abelianization,
// Fox calculus into Z[H] (H = H_1 / torsion) and free products.

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "alexlab/errors.hpp"
#include "alexlab/exactla.hpp"
#include "alexlab/laurent.hpp"

namespace alexlab {

struct Letter {
  std::size_t gen;
  std::int64_t exp;
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Freely reduced word: adjacent letters have distinct generators, no zero exponents.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters) {
    for (const auto& l : letters) append(l.gen, l.exp);
  }

  void append(std::size_t gen, std::int64_t exp) {
    if (exp == 0) return;
    if (!letters_.empty() && letters_.back().gen == gen) {
      letters_.back().exp += exp;
      if (letters_.back().exp == 0) letters_.pop_back();
      return;
    }
    letters_.push_back({gen, exp});
  }
  void append(const Word& w) {
    for (const auto& l : w.letters_) append(l.gen, l.exp);
  }

  Word inverse() const {
    Word w;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.append(it->gen, -it->exp);
    return w;
  }
  // Same word with every generator index shifted by offset.
  Word reindexed(std::size_t offset) const {
    Word w;
    for (const auto& l : letters_) w.letters_.push_back({l.gen + offset, l.exp});
    return w;
  }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  bool empty() const noexcept { return letters_.empty(); }
  // Syllable count with exponents expanded (|a^3 b^-1| = 4).
  std::size_t length() const {
    std::size_t n = 0;
    for (const auto& l : letters_) n += static_cast<std::size_t>(l.exp < 0 ? -l.exp : l.exp);
    return n;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend Word operator*(Word a, const Word& b) {
    a.append(b);
    return a;
  }

 private:
  std::vector<Letter> letters_;
};

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  std::vector<std::string> warnings;  // non-fatal parse findings

  std::size_t generator_count() const noexcept { return generators.size(); }
  std::size_t relator_count() const noexcept { return relators.size(); }

  std::size_t index_of(std::string_view name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == name) return i;
    throw ParseError("unknown generator '" + std::string(name) + "'");
  }

  // Word from tokens `name`, `name^-1`, `name^k` separated by whitespace.
  Word parse_word(std::string_view text) const;
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

inline bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

inline std::int64_t parse_exponent(std::string_view tok, std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) throw ParseError("malformed exponent in '" + std::string(tok) + "'");
  for (std::size_t j = i; j < text.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(text[j])))
      throw ParseError("malformed exponent in '" + std::string(tok) + "'");
  std::int64_t k = 0;
  try {
    k = std::stoll(std::string(text));
  } catch (const std::exception&) {
    throw ParseError("malformed exponent in '" + std::string(tok) + "'");
  }
  if (k == 0) throw ParseError("malformed exponent in '" + std::string(tok) + "' (zero)");
  return k;
}

}  // namespace detail

inline Word GroupPresentation::parse_word(std::string_view text) const {
  Word w;
  for (const auto& tok : detail::split_ws(text)) {
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    std::int64_t exp = 1;
    if (caret != std::string::npos) exp = detail::parse_exponent(tok, std::string_view(tok).substr(caret + 1));
    w.append(index_of(name), exp);
  }
  return w;
}

inline GroupPresentation parse_presentation(std::string_view text) {
  GroupPresentation p;
  bool have_gens = false;
  std::size_t lineno = 0;
  std::istringstream is{std::string(text)};
  std::string line;
  auto fail = [&](const std::string& msg) {
    throw ParseError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "gens") {
      if (have_gens) fail("duplicate 'gens' line");
      have_gens = true;
      std::set<std::string> seen;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (!detail::valid_name(toks[i])) fail("invalid generator name '" + toks[i] + "'");
        if (!seen.insert(toks[i]).second) fail("duplicate generator '" + toks[i] + "'");
        p.generators.push_back(toks[i]);
      }
    } else if (toks[0] == "rel") {
      if (!have_gens) fail("'rel' before 'gens'");
      Word w;
      try {
        auto body = line.substr(line.find("rel") + 3);
        w = p.parse_word(body);
      } catch (const ParseError& e) {
        fail(e.what());
      }
      if (w.empty())
        p.warnings.push_back("line " + std::to_string(lineno) + ": relator reduces to the empty word");
      p.relators.push_back(std::move(w));
    } else {
      fail("unknown directive '" + toks[0] + "'");
    }
  }
  if (!have_gens) throw ParseError("missing 'gens' line");
  return p;
}

inline std::string serialize_word(const GroupPresentation& p, const Word& w) {
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += p.generators.at(l.gen);
    if (l.exp != 1) out += '^' + std::to_string(l.exp);
  }
  return out;
}

// Canonical `.fp` text: single spaces, reduced relators, collapsed exponents.
inline std::string serialize_presentation(const GroupPresentation& p) {
  std::string out = "gens";
  for (const auto& g : p.generators) out += ' ' + g;
  out += '\n';
  for (const auto& r : p.relators) {
    out += "rel";
    if (!r.empty()) out += ' ' + serialize_word(p, r);
    out += '\n';
  }
  return out;
}

// Free product: generators of p2 renamed with `_2` suffixes on clash.
inline GroupPresentation free_product(const GroupPresentation& p1, const GroupPresentation& p2) {
  GroupPresentation out = p1;
  out.warnings.clear();
  std::set<std::string> names(p1.generators.begin(), p1.generators.end());
  for (auto name : p2.generators) {
    while (names.count(name)) name += "_2";
    names.insert(name);
    out.generators.push_back(name);
  }
  const std::size_t offset = p1.generator_count();
  for (const auto& r : p2.relators) out.relators.push_back(r.reindexed(offset));
  return out;
}

// ---------------------------------------------------------------------------

struct AbelianizationData {
  std::size_t b1 = 0;
  IntVector torsion;                 // invariant factors > 1
  std::vector<Exponent> images;      // per generator, free part in Z^{b1}
};

// Exponent-sum matrix: one row per relator, one column per generator.
inline IntMatrix relation_matrix(const GroupPresentation& p) {
  IntMatrix m(p.relator_count(), p.generator_count());
  for (std::size_t i = 0; i < p.relator_count(); ++i)
    for (const auto& l : p.relators[i].letters()) m(i, l.gen) += static_cast<long>(l.exp);
  return m;
}

inline AbelianizationData abelianize(const GroupPresentation& p) {
  const std::size_t s = p.generator_count();
  IntMatrix rel = relation_matrix(p);
  AbelianizationData out;
  if (s == 0) return out;
  auto snf = smith_normal_form(rel);
  const std::size_t r = snf.rank();
  for (const auto& d : snf.diagonal())
    if (d > 1) out.torsion.push_back(d);
  out.b1 = s - r;
  // Free coordinates are the last s - r columns of V; put the image matrix
  // into Hermite form so the basis of H is canonical.
  IntMatrix imgT(out.b1, s);
  for (std::size_t k = 0; k < out.b1; ++k)
    for (std::size_t j = 0; j < s; ++j) imgT(k, j) = snf.V(j, r + k);
  IntMatrix h = hermite_rows(imgT);
  out.images.assign(s, Exponent(out.b1, 0));
  for (std::size_t k = 0; k < out.b1; ++k)
    for (std::size_t j = 0; j < s; ++j) {
      if (!h(k, j).fits_slong_p()) throw LimitError("abelianize: generator image too large");
      out.images[j][k] = h(k, j).get_si();
    }
  return out;
}

// Rectangular matrix over Z[H].
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
      : rows_(rows), cols_(cols), nvars_(nvars), data_(rows * cols, LaurentPoly(nvars)) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nvars() const noexcept { return nvars_; }
  LaurentPoly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const LaurentPoly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0, nvars_ = 0;
  std::vector<LaurentPoly> data_;
};

struct FoxMatrix {
  PolyMatrix matrix;  // relators x generators
  AbelianizationData ab;

  std::size_t rows() const noexcept { return matrix.rows(); }
  std::size_t cols() const noexcept { return matrix.cols(); }
  std::size_t nvars() const noexcept { return ab.b1; }
  const LaurentPoly& operator()(std::size_t i, std::size_t j) const { return matrix(i, j); }
};

// Fox derivatives of one word, abelianized: d(uv) = du + u·dv,
// d(x)/dx = 1, d(x^-1)/dx = -x^-1.
inline std::vector<LaurentPoly> fox_row(const Word& w, const AbelianizationData& ab,
                                        std::size_t generator_count) {
  const std::size_t n = ab.b1;
  std::vector<LaurentPoly> row(generator_count, LaurentPoly(n));
  Exponent prefix(n, 0);
  for (const auto& l : w.letters()) {
    const Exponent& img = ab.images.at(l.gen);
    Exponent e = prefix;
    if (l.exp > 0) {
      for (std::int64_t k = 0; k < l.exp; ++k) {
        row[l.gen].add_term(e, 1);
        for (std::size_t i = 0; i < n; ++i) e[i] += img[i];
      }
    } else {
      for (std::int64_t k = 0; k < -l.exp; ++k) {
        for (std::size_t i = 0; i < n; ++i) e[i] -= img[i];
        row[l.gen].add_term(e, -1);
      }
    }
    for (std::size_t i = 0; i < n; ++i) prefix[i] += l.exp * img[i];
  }
  return row;
}

inline FoxMatrix fox_matrix(const GroupPresentation& p) {
  FoxMatrix f;
  f.ab = abelianize(p);
  f.matrix = PolyMatrix(p.relator_count(), p.generator_count(), f.ab.b1);
  for (std::size_t i = 0; i < p.relator_count(); ++i) {
    auto row = fox_row(p.relators[i], f.ab, p.generator_count());
    for (std::size_t j = 0; j < row.size(); ++j) f.matrix(i, j) = std::move(row[j]);
  }
  return f;
}

// Integer matrix L (to.b1 x from.b1) with L·from.images[g] = to.images[gen_map[g]]
// for every generator g of the source presentation.
inline IntMatrix induced_homology_map(const AbelianizationData& from, const AbelianizationData& to,
                                      const std::vector<std::size_t>& gen_map) {
  const std::size_t s = from.images.size(), m = from.b1, n = to.b1;
  if (gen_map.size() != s) throw MathError("induced_homology_map: generator map has wrong length");
  // Solve from_images · X = to_images over Q (from_images has full column rank).
  std::vector<std::vector<Rational>> aug(s, std::vector<Rational>(m + n));
  for (std::size_t g = 0; g < s; ++g) {
    for (std::size_t j = 0; j < m; ++j) aug[g][j] = static_cast<long>(from.images[g][j]);
    for (std::size_t j = 0; j < n; ++j) aug[g][m + j] = static_cast<long>(to.images.at(gen_map[g])[j]);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t p = r;
    while (p < s && aug[p][c] == 0) ++p;
    if (p == s) throw MathError("induced_homology_map: source images do not span");
    std::swap(aug[r], aug[p]);
    Rational inv = 1 / aug[r][c];
    for (auto& x : aug[r]) x *= inv;
    for (std::size_t i = 0; i < s; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      Rational f = aug[i][c];
      for (std::size_t j = 0; j < m + n; ++j) aug[i][j] -= f * aug[r][j];
    }
    ++r;
  }
  for (std::size_t i = r; i < s; ++i)
    for (std::size_t j = m; j < m + n; ++j)
      if (aug[i][j] != 0) throw MathError("induced_homology_map: generator map is not a homomorphism on H");
  IntMatrix l(n, m);
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t j = 0; j < n; ++j) {
      Rational x = aug[c][m + j];
      x.canonicalize();
      if (x.get_den() != 1) throw MathError("induced_homology_map: map is not integral");
      l(j, c) = x.get_num();
    }
  return l;
}

// Pushes a polynomial in Z[H_from] forward along an integer matrix L: t^e -> t^{L e}.
inline LaurentPoly push_forward(const LaurentPoly& p, const IntMatrix& l) {
  if (l.cols() != p.nvars()) throw MathError("push_forward: map does not match ambient rank");
  LaurentPoly out(l.rows());
  Exponent f(l.rows());
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < l.rows(); ++i) {
      Integer acc = 0;
      for (std::size_t j = 0; j < l.cols(); ++j) acc += l(i, j) * static_cast<long>(e[j]);
      f[i] = acc.get_si();
    }
    out.add_term(f, c);
  }
  return out;
}

// Abelianized image x^{ab} of a generator as a monomial of Z[H].
inline LaurentPoly generator_monomial(const AbelianizationData& ab, std::size_t gen) {
  return LaurentPoly::monomial(ab.images.at(gen));
}

}  // namespace alexlab
