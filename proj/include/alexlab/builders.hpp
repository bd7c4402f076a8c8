#pragma once

// Presentations for the standard families: torus bundles, torus knots,
// mapping tori of free-group endomorphisms, and small helpers.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "alexlab/errors.hpp"
#include "alexlab/exactla.hpp"
#include "alexlab/fpgroup.hpp"

namespace alexlab {

// 2x2 integer matrix with |det| = 1, acting on column vectors.
class MonodromyMatrix {
 public:
  MonodromyMatrix(std::int64_t a11, std::int64_t a12, std::int64_t a21, std::int64_t a22)
      : a_{a11, a12, a21, a22} {
    const std::int64_t d = det();
    if (d != 1 && d != -1)
      throw MathError("monodromy matrix must have determinant +-1 (got " + std::to_string(d) + ")");
  }

  std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[2 * i + j]; }
  std::int64_t det() const { return a_[0] * a_[3] - a_[1] * a_[2]; }
  std::int64_t trace() const { return a_[0] + a_[3]; }

 private:
  std::array<std::int64_t, 4> a_;
};

// <x, y, t | [x,y], t x t^-1 (x^a11 y^a21)^-1, t y t^-1 (x^a12 y^a22)^-1>.
inline GroupPresentation torus_bundle(const MonodromyMatrix& a) {
  GroupPresentation p;
  p.generators = {"x", "y", "t"};
  enum : std::size_t { X, Y, T };
  p.relators.push_back(Word{{X, 1}, {Y, 1}, {X, -1}, {Y, -1}});
  for (std::size_t col = 0; col < 2; ++col) {
    Word image{{X, a(0, col)}, {Y, a(1, col)}};
    Word r{{T, 1}, {col == 0 ? X : Y, 1}, {T, -1}};
    r.append(image.inverse());
    p.relators.push_back(r);
  }
  return p;
}

// <a, b | a^p b^-q>.
inline GroupPresentation torus_knot(std::int64_t p, std::int64_t q) {
  if (p < 1 || q < 1) throw MathError("torus_knot: p and q must be positive");
  GroupPresentation g;
  g.generators = {"a", "b"};
  g.relators.push_back(Word{{0, p}, {1, -q}});
  return g;
}

// Mapping torus <x_1..x_m, t | t x_i t^-1 phi(x_i)^-1>. The images are words
// over `names`; whether they define an automorphism is not checked.
inline GroupPresentation free_by_cyclic(const std::vector<std::string>& names,
                                        const std::vector<std::string>& images) {
  if (names.size() != images.size())
    throw MathError("free_by_cyclic: need exactly one image per generator");
  GroupPresentation p;
  p.generators = names;
  std::string t = "t";
  for (bool clash = true; clash;) {
    clash = false;
    for (const auto& n : names)
      if (n == t) {
        t += "_2";
        clash = true;
      }
  }
  std::vector<Word> parsed;
  for (const auto& img : images) parsed.push_back(p.parse_word(img));
  p.generators.push_back(t);
  const std::size_t T = names.size();
  for (std::size_t i = 0; i < names.size(); ++i) {
    Word r{{T, 1}, {i, 1}, {T, -1}};
    r.append(parsed[i].inverse());
    p.relators.push_back(r);
  }
  p.warnings.push_back("free_by_cyclic: automorphism property of the images is not verified");
  return p;
}

// Generators x1..xm.
inline std::vector<std::string> indexed_names(const std::string& stem, std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(stem + std::to_string(i + 1));
  return out;
}

inline GroupPresentation free_group(std::size_t m) {
  GroupPresentation p;
  p.generators = indexed_names("x", m);
  return p;
}

// <x | x^n>.
inline GroupPresentation cyclic_group(std::int64_t n) {
  if (n < 1) throw MathError("cyclic_group: order must be positive");
  GroupPresentation p;
  p.generators = {"x"};
  p.relators.push_back(Word{{0, n}});
  return p;
}

inline GroupPresentation trivial_group() { return GroupPresentation{}; }

}  // namespace alexlab
