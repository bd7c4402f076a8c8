#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

#include "alexlab/builders.hpp"
#include "alexlab/obstruct.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace alexlab;
using testing_support::load;

namespace {

LaurentPoly P(std::string_view text, std::size_t n = 1) { return parse_laurent(text, n); }

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

GroupPresentation relabelled(const GroupPresentation& p, bool reverse, bool invert) {
  const std::size_t s = p.generator_count();
  GroupPresentation q;
  q.generators.resize(s);
  auto where = [&](std::size_t g) { return reverse ? s - 1 - g : g; };
  for (std::size_t g = 0; g < s; ++g) q.generators[where(g)] = p.generators[g];
  for (const auto& r : p.relators) {
    Word w;
    for (const auto& l : r.letters()) w.append(where(l.gen), invert && l.gen == 0 ? -l.exp : l.exp);
    q.relators.push_back(w);
  }
  return q;
}

std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(ALEXLAB_CORPUS_DIR))
    if (e.path().extension() == ".fp") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Kahler, Examples) {
  EXPECT_EQ(kahler_test(load("z2.fp")).verdict, Verdict::Consistent);
  auto tref = kahler_test(load("trefoil.fp"));
  EXPECT_EQ(tref.verdict, Verdict::Obstructed);
  EXPECT_TRUE(has(tref.witnesses, "b1 = 1 is odd"));
  EXPECT_TRUE(has(tref.witnesses, "Delta^1 = t^2 - t + 1 is not constant"));
  EXPECT_TRUE(has(tref.witnesses, "thickness 1 > 0"));
  EXPECT_EQ(kahler_test(load("figure8.fp")).verdict, Verdict::Obstructed);
  EXPECT_EQ(kahler_test(free_group(2)).verdict, Verdict::Consistent);
  EXPECT_EQ(kahler_test(load("z2torsion.fp")).verdict, Verdict::Consistent);
}

TEST(Kahler, OddBettiAlwaysObstructed) {
  for (const auto& name : corpus_files()) {
    auto r = kahler_test(load(name));
    if (r.b1 % 2 == 1) {
      EXPECT_EQ(r.verdict, Verdict::Obstructed) << name;
    }
    EXPECT_EQ(r.verdict == Verdict::Obstructed, !r.witnesses.empty()) << name;
  }
}

TEST(Qp, Examples) {
  EXPECT_EQ(qp_test(load("trefoil.fp")).verdict, Verdict::Consistent);
  auto sol = qp_test(load("solbundle.fp"));
  EXPECT_EQ(sol.verdict, Verdict::Obstructed);
  EXPECT_TRUE(has(sol.witnesses, "non-cyclotomic factor t^2 - 3t + 1 in Delta^1"));
  EXPECT_EQ(qp_test(load("figure8.fp")).verdict, Verdict::Obstructed);
  EXPECT_EQ(qp_test(load("klein.fp")).verdict, Verdict::Consistent);
  EXPECT_EQ(qp_test(load("torus3.fp")).verdict, Verdict::Consistent);
  EXPECT_EQ(qp_test(load("z2torsion.fp")).verdict, Verdict::Consistent);
}

TEST(Qp, BettiTwoIsInconclusive) {
  auto z2 = qp_test(load("z2.fp"));
  EXPECT_EQ(z2.verdict, Verdict::Inconclusive);
  EXPECT_TRUE(z2.witnesses.empty());
  auto f2 = qp_test(free_group(2));
  EXPECT_EQ(f2.verdict, Verdict::Inconclusive);
  // A two-dimensional Newton polytope is reported but not applied.
  auto tt = qp_test(free_product(load("trefoil.fp"), load("trefoil.fp")));
  EXPECT_EQ(tt.b1, 2u);
  EXPECT_EQ(tt.verdict, Verdict::Inconclusive);
}

TEST(Qp, SolTimesCyclic) {
  auto p = free_product(load("solbundle.fp"), cyclic_group(2));
  auto r = qp_test(p);
  EXPECT_EQ(r.b1, 1u);
  EXPECT_EQ(r.per_k[r.k0].delta, P("2t^2 - 6t + 2"));
  EXPECT_EQ(r.per_k[r.k0].cyclotomic->content, 2);
  EXPECT_EQ(r.verdict, Verdict::Obstructed);
  EXPECT_TRUE(has(r.witnesses, "non-cyclotomic factor t^2 - 3t + 1 in Delta^1"));
}

TEST(Qp, ZeroOrdersAreSkipped) {
  auto r = qp_test(load("trefoil.fp"));
  EXPECT_TRUE(r.per_k[0].delta.is_zero());
  EXPECT_EQ(r.per_k[0].cyclotomic_verdict, "zero");
  EXPECT_EQ(r.kmax, kDefaultKmax);
  EXPECT_EQ(r.per_k.size(), kDefaultKmax + 1);
}

TEST(Qp, InvariantUnderRelabelling) {
  for (const auto& name : corpus_files()) {
    auto p = load(name);
    const auto base = qp_test(p).verdict;
    const auto kbase = kahler_test(p).verdict;
    for (bool rev : {false, true})
      for (bool inv : {false, true}) {
        auto q = relabelled(p, rev, inv);
        EXPECT_EQ(qp_test(q).verdict, base) << name << " rev=" << rev << " inv=" << inv;
        EXPECT_EQ(kahler_test(q).verdict, kbase) << name;
      }
  }
}

TEST(ConnectedSum, FigureEightTwice) {
  auto f8 = load("figure8.fp");
  auto r = connected_sum_report({f8, f8});
  EXPECT_EQ(r.factor_thickness, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(r.thickness_sum, 2u);
  EXPECT_EQ(r.product_thickness, 2u);
  EXPECT_TRUE(r.additive);
  EXPECT_TRUE(r.divisible);
  EXPECT_EQ(r.qp.b1, 2u);
}

TEST(ConnectedSum, TrivialFactor) {
  auto r = connected_sum_report({load("trefoil.fp"), trivial_group()});
  EXPECT_EQ(r.product_order.delta, P("t^2 - t + 1"));
  EXPECT_EQ(r.thickness_sum, 1u);
  EXPECT_TRUE(r.additive);
  EXPECT_TRUE(r.divisible);
  EXPECT_THROW(connected_sum_report({load("trefoil.fp")}), MathError);
}

TEST(ConnectedSum, AdditiveAndDivisibleOnCorpusPairs) {
  const std::vector<std::string> knots{"trefoil.fp", "figure8.fp", "solbundle.fp", "klein.fp", "torusknot25.fp",
                                       "torusknot34.fp", "rotation.fp"};
  for (std::size_t i = 0; i < knots.size(); ++i)
    for (std::size_t j = i; j < knots.size(); ++j) {
      auto r = connected_sum_report({load(knots[i]), load(knots[j])});
      EXPECT_TRUE(r.additive) << knots[i] << " # " << knots[j];
      EXPECT_TRUE(r.divisible) << knots[i] << " # " << knots[j];
      EXPECT_EQ(r.product_thickness, r.factor_thickness[0] + r.factor_thickness[1]);
    }
}

TEST(ConnectedSum, ProductOfPushedFactorsMatchesDirectProduct) {
  // With one-variable factors, the pushed-forward deltas live in separate variables.
  auto r = connected_sum_report({load("trefoil.fp"), load("figure8.fp")});
  auto expect = parse_laurent("t1^2 - t1 + 1", 2) * parse_laurent("t2^2 - 3*t2 + 1", 2);
  EXPECT_TRUE(equal_up_to_unit(r.factor_product, expect)) << to_string(r.factor_product);
}
