#pragma once

// Alexander norm on H^1, the difference polytope C = hull{h - g} of the
// support of Delta (which bounds the dual Thurston ball from inside), the
// Alexander unit ball (polar of C), and a checker for ||phi||_A <= ||phi||_T
// against user-supplied Thurston norm data.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "alexlab/errors.hpp"
#include "alexlab/exactla.hpp"
#include "alexlab/laurent.hpp"

namespace alexlab {

using CohomologyClass = IntVector;

// Width of the Newton polytope of delta in direction phi; 0 for delta = 0.
inline Integer alexander_norm(const LaurentPoly& delta, const CohomologyClass& phi) {
  if (phi.size() != delta.nvars()) throw MathError("alexander_norm: phi has wrong length");
  if (delta.is_zero()) return 0;
  Integer lo, hi;
  bool first = true;
  for (const auto& [e, c] : delta.terms()) {
    Integer v = 0;
    for (std::size_t i = 0; i < e.size(); ++i) v += phi[i] * static_cast<long>(e[i]);
    if (first || v < lo) lo = v;
    if (first || v > hi) hi = v;
    first = false;
  }
  return hi - lo;
}

enum class BallRole { SupportPolytope, UnitBall };

inline const char* to_string(BallRole r) {
  return r == BallRole::SupportPolytope ? "support_polytope" : "unit_ball";
}

struct NormBall {
  BallRole role = BallRole::SupportPolytope;
  std::vector<std::vector<Rational>> vertices;  // lexicographic order
};

inline constexpr std::size_t kMaxPolytopeRank = 4;

namespace detail {

using Point = std::vector<std::int64_t>;
using Wide = __int128;

struct Facet {
  std::vector<std::int64_t> normal;  // primitive, outward
  std::int64_t offset;               // <normal, x> <= offset on the polytope
  friend bool operator<(const Facet& a, const Facet& b) {
    return std::tie(a.normal, a.offset) < std::tie(b.normal, b.offset);
  }
};

struct HullResult {
  std::size_t dim = 0;
  std::vector<Point> vertices;  // ambient coordinates, sorted
  std::vector<Facet> facets;    // only when dim equals the ambient dimension
};

inline Wide det_wide(std::vector<std::vector<Wide>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Wide total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Wide>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Wide> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(std::move(row));
    }
    Wide term = m[0][c] * det_wide(std::move(minor));
    total += (c % 2 == 0) ? term : -term;
  }
  return total;
}

inline Wide gcd_wide(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::size_t rank_of(const std::vector<Point>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rows[i][j]);
  return integer_rank(m);
}

// Exact vertex (and, for full-dimensional input, facet) enumeration by
// brute force over d-subsets of points after projecting onto d coordinates
// that are injective on the affine hull.
inline HullResult hull(std::vector<Point> pts) {
  constexpr std::int64_t kCoordLimit = std::int64_t{1} << 12;
  HullResult out;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) return out;
  const std::size_t n = pts[0].size();
  for (const auto& p : pts)
    for (auto x : p)
      if (x > kCoordLimit || x < -kCoordLimit) throw LimitError("polytope: coordinates too large");
  std::vector<Point> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Point d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = pts[i][j] - pts[0][j];
    diffs.push_back(d);
  }
  const std::size_t d = rank_of(diffs, n);
  out.dim = d;
  if (d == 0) {
    out.vertices = {pts[0]};
    return out;
  }
  // Coordinates S with the projection injective on the direction space.
  std::vector<std::size_t> coords;
  for (std::size_t j = 0; j < n && coords.size() < d; ++j) {
    auto trial = coords;
    trial.push_back(j);
    std::vector<Point> proj;
    for (const auto& v : diffs) {
      Point q;
      for (auto c : trial) q.push_back(v[c]);
      proj.push_back(q);
    }
    if (rank_of(proj, trial.size()) == trial.size()) coords = trial;
  }
  std::vector<Point> proj;
  for (const auto& p : pts) {
    Point q;
    for (auto c : coords) q.push_back(p[c]);
    proj.push_back(q);
  }
  const std::size_t k = proj.size();
  std::vector<std::vector<std::vector<std::int64_t>>> incident(k);  // facet normals per point
  std::set<Facet> facets;
  if (d == 1) {
    auto [mn, mx] = std::minmax_element(proj.begin(), proj.end());
    facets.insert({{-1}, -(*mn)[0]});
    facets.insert({{1}, (*mx)[0]});
  } else {
    double subsets = 1;
    for (std::size_t i = 0; i < d; ++i) subsets = subsets * static_cast<double>(k - i) / static_cast<double>(i + 1);
    if (subsets * static_cast<double>(k) > 4e8) throw LimitError("polytope: too many support points");
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) idx[i] = i;
    for (;;) {
      std::vector<std::vector<Wide>> rowsd;
      for (std::size_t r = 1; r < d; ++r) {
        std::vector<Wide> row(d);
        for (std::size_t j = 0; j < d; ++j) row[j] = proj[idx[r]][j] - proj[idx[0]][j];
        rowsd.push_back(std::move(row));
      }
      // Generalized cross product via cofactors.
      std::vector<Wide> normal(d);
      bool nonzero = false;
      for (std::size_t c = 0; c < d; ++c) {
        std::vector<std::vector<Wide>> minor;
        for (const auto& row : rowsd) {
          std::vector<Wide> mr;
          for (std::size_t j = 0; j < d; ++j)
            if (j != c) mr.push_back(row[j]);
          minor.push_back(std::move(mr));
        }
        Wide v = det_wide(std::move(minor));
        normal[c] = (c % 2 == 0) ? v : -v;
        if (normal[c] != 0) nonzero = true;
      }
      if (nonzero) {
        Wide g = 0;
        for (auto v : normal) g = gcd_wide(g, v);
        for (auto& v : normal) v /= g;
        auto dot = [&](const Point& p) {
          Wide s = 0;
          for (std::size_t j = 0; j < d; ++j) s += normal[j] * p[j];
          return s;
        };
        const Wide c0 = dot(proj[idx[0]]);
        bool le = true, ge = true;
        for (const auto& p : proj) {
          Wide v = dot(p);
          if (v > c0) le = false;
          if (v < c0) ge = false;
          if (!le && !ge) break;
        }
        if (le || ge) {
          Facet f;
          const int s = le ? 1 : -1;
          for (auto v : normal) f.normal.push_back(static_cast<std::int64_t>(s * v));
          f.offset = static_cast<std::int64_t>(s * c0);
          facets.insert(std::move(f));
        }
      }
      std::size_t i = d;
      while (i > 0 && idx[i - 1] == k - d + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  for (const auto& f : facets)
    for (std::size_t p = 0; p < k; ++p) {
      Wide s = 0;
      for (std::size_t j = 0; j < d; ++j) s += Wide(f.normal[j]) * proj[p][j];
      if (s == f.offset) incident[p].push_back(f.normal);
    }
  for (std::size_t p = 0; p < k; ++p)
    if (incident[p].size() >= d && rank_of(incident[p], d) == d) out.vertices.push_back(pts[p]);
  if (d == n) out.facets.assign(facets.begin(), facets.end());
  return out;
}

inline std::vector<Point> support_points(const LaurentPoly& p) {
  std::vector<Point> pts;
  for (const auto& [e, c] : p.terms()) pts.push_back(e);
  return pts;
}

inline HullResult difference_hull(const LaurentPoly& delta) {
  if (delta.is_zero()) throw MathError("support_polytope: zero polynomial");
  if (delta.nvars() > kMaxPolytopeRank)
    throw LimitError("support_polytope: b1 = " + std::to_string(delta.nvars()) +
                     " exceeds the supported rank " + std::to_string(kMaxPolytopeRank));
  // Vertices of P - P are differences of vertices of P.
  auto newt = hull(support_points(delta));
  std::vector<Point> diffs;
  for (const auto& a : newt.vertices)
    for (const auto& b : newt.vertices) {
      Point d(a.size());
      for (std::size_t j = 0; j < a.size(); ++j) d[j] = a[j] - b[j];
      diffs.push_back(std::move(d));
    }
  return hull(std::move(diffs));
}

}  // namespace detail

// Vertices of the Newton polytope of p.
inline std::vector<Exponent> newton_vertices(const LaurentPoly& p) {
  if (p.is_zero()) throw MathError("newton_vertices: zero polynomial");
  if (p.nvars() > kMaxPolytopeRank) throw LimitError("newton_vertices: rank limit exceeded");
  return detail::hull(detail::support_points(p)).vertices;
}

// C = hull{h - g : a_h, a_g != 0}, centrally symmetric.
inline NormBall support_polytope(const LaurentPoly& delta) {
  auto h = detail::difference_hull(delta);
  NormBall ball;
  ball.role = BallRole::SupportPolytope;
  for (const auto& v : h.vertices) {
    std::vector<Rational> q;
    for (auto x : v) q.emplace_back(static_cast<long>(x));
    ball.vertices.push_back(std::move(q));
  }
  return ball;
}

// Unit ball {phi : ||phi||_A <= 1}: the polar of C. Bounded only when C is
// full-dimensional (the Alexander norm is then a norm, not a seminorm).
inline NormBall unit_ball(const LaurentPoly& delta) {
  auto h = detail::difference_hull(delta);
  if (h.dim != delta.nvars() || delta.nvars() == 0)
    throw MathError("unit_ball: Alexander norm is degenerate (support polytope is not full-dimensional)");
  NormBall ball;
  ball.role = BallRole::UnitBall;
  for (const auto& f : h.facets) {
    if (f.offset <= 0) throw MathError("unit_ball: origin is not interior to the support polytope");
    std::vector<Rational> v;
    for (auto a : f.normal) v.push_back(Rational(static_cast<long>(a), static_cast<unsigned long>(f.offset)));
    for (auto& x : v) x.canonicalize();
    ball.vertices.push_back(std::move(v));
  }
  std::sort(ball.vertices.begin(), ball.vertices.end());
  return ball;
}

struct FiberedDatum {
  CohomologyClass phi;
  Integer thurston;  // user-supplied ||phi||_T
  bool fibered = false;
};

struct McMullenEntry {
  FiberedDatum datum;
  Integer alexander;
  bool pass = false;
  std::string reason;  // empty on PASS
};

struct McMullenReport {
  std::vector<McMullenEntry> entries;
  bool all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
  }
};

// PASS when ||phi||_A <= thurston, with equality required for fibered classes.
// Only meaningful for b1 >= 2.
inline McMullenReport mcmullen_check(const LaurentPoly& delta, const std::vector<FiberedDatum>& data) {
  if (delta.nvars() < 2)
    throw MathError("mcmullen_check: requires b1 >= 2 (got " + std::to_string(delta.nvars()) + ")");
  McMullenReport report;
  for (const auto& d : data) {
    McMullenEntry e{d, alexander_norm(delta, d.phi), true, {}};
    std::ostringstream why;
    if (e.alexander > d.thurston) {
      e.pass = false;
      why << "alexander norm " << e.alexander << " > thurston norm " << d.thurston;
    } else if (d.fibered && e.alexander != d.thurston) {
      e.pass = false;
      why << "fibered class: alexander norm " << e.alexander << " != thurston norm " << d.thurston;
    }
    e.reason = why.str();
    report.entries.push_back(std::move(e));
  }
  return report;
}

// Lines `phi <int> <int> ...  thurston <int>  fibered <0|1>`; `#` comments.
inline std::vector<FiberedDatum> parse_thurston_data(std::string_view text) {
  std::vector<FiberedDatum> out;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("thurston data line " + std::to_string(lineno) + ": " + msg);
  };
  auto as_int = [&](const std::string& tok) {
    std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i == tok.size()) fail("malformed integer '" + tok + "'");
    for (std::size_t j = i; j < tok.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(tok[j]))) fail("malformed integer '" + tok + "'");
    return Integer(tok[0] == '+' ? tok.substr(1) : tok);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks[0] != "phi") fail("expected 'phi'");
    FiberedDatum d;
    std::size_t i = 1;
    while (i < toks.size() && toks[i] != "thurston") d.phi.push_back(as_int(toks[i++]));
    if (d.phi.empty()) fail("empty phi");
    if (i + 1 >= toks.size()) fail("expected 'thurston <int>'");
    d.thurston = as_int(toks[i + 1]);
    if (d.thurston < 0) fail("thurston norm must be nonnegative");
    i += 2;
    if (i + 1 >= toks.size() || toks[i] != "fibered") fail("expected 'fibered <0|1>'");
    if (toks[i + 1] != "0" && toks[i + 1] != "1") fail("fibered flag must be 0 or 1");
    d.fibered = toks[i + 1] == "1";
    if (i + 2 != toks.size()) fail("trailing tokens");
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace alexlab
