#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "irvm/lp.hpp"

namespace irvm::lp {
namespace {

// min x + y  s.t.  x + 2y >= 4,  3x + y >= 6,  0 <= x, y <= 10
Problem two_by_two() {
  Problem p;
  p.add_column("x", 1, 0, 10);
  p.add_column("y", 1, 0, 10);
  p.add_row({"r1", {{0, 1}, {1, 2}}, Sense::GreaterEqual, 4});
  p.add_row({"r2", {{0, 3}, {1, 1}}, Sense::GreaterEqual, 6});
  return p;
}

TEST(Lp, ExactOptimumIsRational) {
  const auto s = solve_exact(two_by_two());
  ASSERT_EQ(s.status, Status::Optimal);
  // Vertex x = 8/5, y = 6/5.
  EXPECT_EQ(s.objective, mpq_class(14, 5));
  EXPECT_EQ(s.values[0], mpq_class(8, 5));
  EXPECT_EQ(s.values[1], mpq_class(6, 5));
}

TEST(Lp, FloatAgreesWithExact) {
  const auto s = solve_float(two_by_two());
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_NEAR(s.objective, 2.8, 1e-9);
}

TEST(Lp, DualBoundCertifiesOptimum) {
  const auto p = two_by_two();
  const auto s = solve_float(p);
  const auto bound = dual_bound(p, s.duals);
  ASSERT_TRUE(bound.has_value());
  EXPECT_LE(*bound, mpq_class(14, 5));
  EXPECT_GT(*bound, mpq_class(14, 5) - mpq_class(1, 1000));
}

TEST(Lp, DetectsInfeasibility) {
  Problem p;
  p.add_column("x", 1, 0, 3);
  p.add_row({"r", {{0, 1}}, Sense::GreaterEqual, 5});
  EXPECT_EQ(solve_exact(p).status, Status::Infeasible);
  EXPECT_EQ(solve_float(p).status, Status::Infeasible);
  EXPECT_FALSE(relaxation_ceiling(p, Arithmetic::Certified).has_value());
  EXPECT_FALSE(solve_integer(p, Arithmetic::Exact).has_value());
}

TEST(Lp, EqualityRows) {
  Problem p;
  p.add_column("x", 2, 0, kInfinity);
  p.add_column("y", 3, 0, kInfinity);
  p.add_row({"e", {{0, 1}, {1, 1}}, Sense::Equal, 7});
  p.add_row({"l", {{0, 1}}, Sense::LessEqual, 4});
  const auto s = solve_exact(p);
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_EQ(s.objective, mpq_class(17));
}

TEST(Lp, IntegerRoundsUpRelaxation) {
  const auto p = two_by_two();
  EXPECT_EQ(relaxation_ceiling(p, Arithmetic::Exact), 3);
  const auto s = solve_integer(p, Arithmetic::Exact);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->objective, 3);
  EXPECT_TRUE(p.is_feasible(s->values));
  EXPECT_FALSE(solve_integer(p, Arithmetic::Exact, 3).has_value());
}

Problem random_problem(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 4), cost(0, 5), ub(1, 4), rhs(-2, 8), dims(2, 4);
  Problem p;
  const int n = dims(rng), m = dims(rng);
  for (int j = 0; j < n; ++j) p.add_column("x" + std::to_string(j), cost(rng), 0, ub(rng));
  for (int i = 0; i < m; ++i) {
    Row r{"r" + std::to_string(i), {}, i % 3 == 0 ? Sense::GreaterEqual : Sense::LessEqual, rhs(rng)};
    for (int j = 0; j < n; ++j) {
      if (auto c = coef(rng)) r.terms.push_back({j, c});
    }
    p.add_row(std::move(r));
  }
  return p;
}

std::optional<std::int64_t> enumerate_integer(const Problem& p) {
  std::vector<std::int64_t> x(p.columns.size(), 0);
  std::optional<std::int64_t> best;
  std::function<void(std::size_t)> go = [&](std::size_t j) {
    if (j == x.size()) {
      if (p.is_feasible(x)) {
        const auto z = p.objective(x);
        if (!best || z < *best) best = z;
      }
      return;
    }
    for (auto v = p.columns[j].lower; v <= p.columns[j].upper; ++v) {
      x[j] = v;
      go(j + 1);
    }
  };
  go(0);
  return best;
}

TEST(Lp, RandomProblemsAgreeAcrossArithmetic) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = random_problem(rng);
    const auto exact = solve_exact(p);
    const auto flt = solve_float(p);
    ASSERT_EQ(exact.status, flt.status) << p.to_text();
    if (exact.status == Status::Optimal) {
      EXPECT_NEAR(exact.objective.get_d(), flt.objective, 1e-7) << p.to_text();
    }
    const auto ce = relaxation_ceiling(p, Arithmetic::Exact);
    EXPECT_EQ(relaxation_ceiling(p, Arithmetic::Certified), ce);
    const auto brute = enumerate_integer(p);
    for (auto a : {Arithmetic::Exact, Arithmetic::Certified, Arithmetic::Float}) {
      const auto s = solve_integer(p, a);
      ASSERT_EQ(s.has_value(), brute.has_value()) << p.to_text();
      if (s) {
        EXPECT_EQ(s->objective, *brute) << p.to_text();
        EXPECT_TRUE(p.is_feasible(s->values));
      }
    }
  }
}

TEST(Lp, TextFormatListsEverything) {
  const auto text = two_by_two().to_text("demo");
  EXPECT_NE(text.find("\\ demo"), std::string::npos);
  EXPECT_NE(text.find("Minimize"), std::string::npos);
  EXPECT_NE(text.find("r1:"), std::string::npos);
  EXPECT_NE(text.find("Bounds"), std::string::npos);
  EXPECT_NE(text.find("End"), std::string::npos);
}

}  // namespace
}  // namespace irvm::lp
