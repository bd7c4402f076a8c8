#pragma once

// Necessary-condition tests for Kähler and quasi-projective groups, and the
// free-product (connected sum) thickness analysis.
//
// Verdicts are one-sided: OBSTRUCTED means some computed necessary
// condition fails, CONSISTENT only means none of the checked ones does.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "alexlab/alexinv.hpp"
#include "alexlab/cyclotomic.hpp"
#include "alexlab/errors.hpp"
#include "alexlab/fpgroup.hpp"
#include "alexlab/laurent.hpp"

namespace alexlab {

enum class Verdict { Obstructed, Consistent, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Obstructed: return "OBSTRUCTED";
    case Verdict::Consistent: return "CONSISTENT";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

inline constexpr std::size_t kDefaultKmax = 3;

struct OrderFinding {
  std::size_t k = 0;
  LaurentPoly delta;                          // canonical; zero allowed
  std::optional<std::size_t> newton_dim;      // empty when delta = 0
  std::optional<UnivariateForm> line;         // when the support is collinear
  std::optional<CyclotomicDecomposition> cyclotomic;
  std::string cyclotomic_verdict;             // zero | constant | cyclotomic | non-cyclotomic | not-collinear
};

struct ObstructionReport {
  std::string test;  // "kahler" or "qp"
  std::size_t b1 = 0;
  std::size_t k0 = 0;
  std::size_t kmax = 0;
  std::vector<OrderFinding> per_k;
  std::size_t thickness = 0;
  Verdict verdict = Verdict::Consistent;
  std::vector<std::string> witnesses;
  std::vector<std::string> notes;
};

namespace detail {

inline OrderFinding describe_order(std::size_t k, const LaurentPoly& delta) {
  OrderFinding f;
  f.k = k;
  f.delta = delta.canonical();
  if (delta.is_zero()) {
    f.cyclotomic_verdict = "zero";
    return f;
  }
  f.newton_dim = newton_dim(delta);
  f.line = line_support(delta);
  if (!f.line) {
    f.cyclotomic_verdict = "not-collinear";
  } else {
    f.cyclotomic = cyclotomic_decompose(f.line->poly);
    if (*f.newton_dim == 0)
      f.cyclotomic_verdict = "constant";
    else
      f.cyclotomic_verdict = f.cyclotomic->fully_cyclotomic() ? "cyclotomic" : "non-cyclotomic";
  }
  return f;
}

// Orders Delta^k for k0 <= k <= max(kmax, k0), plus zero entries below k0.
inline ObstructionReport examine(const GroupPresentation& p, std::size_t kmax, const char* test) {
  ObstructionReport r;
  r.test = test;
  FoxMatrix f = fox_matrix(p);
  r.b1 = f.ab.b1;
  r.kmax = kmax;
  const std::size_t rank = fraction_field_rank(detail::compress(f.matrix));
  r.k0 = f.cols() - rank;
  const std::size_t top = std::max(kmax, r.k0);
  for (std::size_t k = 0; k <= top; ++k) {
    LaurentPoly delta = k < r.k0 ? LaurentPoly(r.b1) : order_k(f, k);
    r.per_k.push_back(describe_order(k, delta));
  }
  r.thickness = *r.per_k[r.k0].newton_dim;
  if (r.k0 > kmax)
    r.notes.push_back("first nonzero order sits at k0 = " + std::to_string(r.k0) +
                      " > kmax; examined k0 as well");
  if (r.b1 == 0) r.notes.push_back("b1 = 0: Fox matrix is over Z");
  return r;
}

inline std::string delta_name(std::size_t k) { return "Delta^" + std::to_string(k); }

}  // namespace detail

// OBSTRUCTED if b1 is odd, some nonzero Delta^k is non-constant, or thickness > 0.
inline ObstructionReport kahler_test(const GroupPresentation& p, std::size_t kmax = kDefaultKmax) {
  ObstructionReport r = detail::examine(p, kmax, "kahler");
  if (r.b1 % 2 == 1) r.witnesses.push_back("b1 = " + std::to_string(r.b1) + " is odd");
  for (const auto& f : r.per_k) {
    if (f.delta.is_zero() || f.delta.is_monomial()) continue;
    r.witnesses.push_back(detail::delta_name(f.k) + " = " + to_string(f.delta) + " is not constant");
  }
  if (r.thickness > 0) r.witnesses.push_back("thickness " + std::to_string(r.thickness) + " > 0");
  r.verdict = r.witnesses.empty() ? Verdict::Consistent : Verdict::Obstructed;
  r.notes.push_back("necessary conditions only; CONSISTENT is not a proof of Kähler");
  return r;
}

// For b1 != 2: OBSTRUCTED if some nonzero Delta^k has a Newton polytope of
// dimension >= 2, or its univariate form has a non-cyclotomic factor.
inline ObstructionReport qp_test(const GroupPresentation& p, std::size_t kmax = kDefaultKmax) {
  ObstructionReport r = detail::examine(p, kmax, "qp");
  std::vector<std::string> findings;
  for (const auto& f : r.per_k) {
    if (f.delta.is_zero()) continue;
    if (*f.newton_dim >= 2) {
      findings.push_back(detail::delta_name(f.k) + " has a Newton polytope of dimension " +
                         std::to_string(*f.newton_dim) + " (not a point or segment)");
    } else if (f.cyclotomic && !f.cyclotomic->fully_cyclotomic()) {
      findings.push_back("non-cyclotomic factor " + to_string(f.cyclotomic->remainder) + " in " +
                         detail::delta_name(f.k));
    }
  }
  if (r.b1 == 2) {
    r.verdict = Verdict::Inconclusive;
    r.notes.push_back("b1 = 2 lies outside the hypothesis of the quasi-projective test");
    for (auto& s : findings) r.notes.push_back("not applied: " + s);
  } else {
    r.witnesses = std::move(findings);
    r.verdict = r.witnesses.empty() ? Verdict::Consistent : Verdict::Obstructed;
  }
  r.notes.push_back("necessary conditions only; CONSISTENT is not a proof of quasi-projectivity");
  return r;
}

struct ConnectedSumReport {
  std::vector<FirstOrder> factor_orders;
  std::vector<std::size_t> factor_thickness;
  std::size_t thickness_sum = 0;
  FirstOrder product_order;
  std::size_t product_thickness = 0;
  bool additive = false;      // product thickness equals the sum
  bool divisible = false;     // product delta divisible by the pushed-forward factor deltas
  LaurentPoly factor_product; // product of pushed-forward factor deltas, canonical
  GroupPresentation product;
  ObstructionReport qp;
};

inline GroupPresentation free_product_all(const std::vector<GroupPresentation>& ps) {
  GroupPresentation out;
  for (const auto& p : ps) out = free_product(out, p);
  return out;
}

inline ConnectedSumReport connected_sum_report(const std::vector<GroupPresentation>& ps,
                                               std::size_t kmax = kDefaultKmax) {
  if (ps.size() < 2) throw MathError("connected_sum_report: needs at least two presentations");
  ConnectedSumReport r;
  r.product = free_product_all(ps);
  FoxMatrix pf = fox_matrix(r.product);
  r.product_order = first_order(pf);
  r.product_thickness = newton_dim(r.product_order.delta);
  r.factor_product = LaurentPoly::constant(pf.nvars(), 1);
  std::size_t offset = 0;
  for (const auto& p : ps) {
    FoxMatrix ff = fox_matrix(p);
    FirstOrder fo = first_order(ff);
    r.factor_thickness.push_back(newton_dim(fo.delta));
    r.thickness_sum += r.factor_thickness.back();
    std::vector<std::size_t> gen_map(p.generator_count());
    for (std::size_t g = 0; g < gen_map.size(); ++g) gen_map[g] = offset + g;
    IntMatrix l = induced_homology_map(ff.ab, pf.ab, gen_map);
    r.factor_product *= push_forward(fo.delta, l);
    r.factor_orders.push_back(std::move(fo));
    offset += p.generator_count();
  }
  r.factor_product = r.factor_product.canonical();
  r.additive = r.product_thickness == r.thickness_sum;
  r.divisible = divides(r.factor_product, r.product_order.delta);
  r.qp = qp_test(r.product, kmax);
  return r;
}

}  // namespace alexlab
