#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "qva/characters.hpp"
#include "qva/mlde.hpp"

using namespace qva;

namespace {

Puiseux flowed_char(long u, long j, const Rat& trunc) {
  Specialization s;
  s.trunc = trunc;
  s.limit("y", Rat(1));
  s.limit("z", Rat(2));
  return build_sl2_boundary_char(u, j).flowed(sl2_flow(rat(-1, 2))).evaluate(s);
}

MLDEOp u3_operator() {
  MLDEOp op;
  op.order = 2;
  op.group = MLDEGroup::Gamma0_2;
  op.coeffs.resize(2);
  op.coeffs[1].emplace_back(rat(-1, 96), BasisForm{MLDEGroup::Gamma0_2, 1, 1, 0, 0});
  return op;
}

}  // namespace

TEST_CASE("serre derivative leibniz rule") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> coef(-4, 4), num(0, 5);
  for (int rep = 0; rep < 6; ++rep) {
    Puiseux f(Rat(8)), g(Rat(8));
    for (int t = 0; t < 4; ++t) {
      f += Puiseux::monomial(Cyc(Rat(coef(rng))), rat(num(rng), 2), Rat(8));
      g += Puiseux::monomial(Cyc(Rat(coef(rng))), rat(num(rng), 3), Rat(8));
    }
    for (auto [w1, w2] : {std::pair<long, long>{0, 0}, {2, 4}, {-1, 3}}) {
      Puiseux lhs = serre_derivative(f * g, Rat(w1 + w2));
      Puiseux rhs = serre_derivative(f, Rat(w1)) * g + f * serre_derivative(g, Rat(w2));
      CHECK(Puiseux::agree(lhs, rhs));
    }
  }
}

TEST_CASE("d_power is the composed serre tower") {
  Puiseux f = dedekind_eta(Rat(9)).pow_int(2);
  Puiseux step = f;
  for (int k = 1; k <= 3; ++k) {
    step = serre_derivative(step, Rat(2 * k - 2));
    CHECK(Puiseux::agree(d_power(f, k), step));
  }
  CHECK(Puiseux::agree(d_power(f, 0), f));
}

TEST_CASE("weight bases") {
  // theta_bar(i,j) = theta_bar(j,i), so the basis keeps i <= j only
  auto g1 = weight_basis(MLDEGroup::Gamma0_2, 1);
  REQUIRE(g1.size() == 1);
  CHECK(g1[0].name() == "Theta(0,1)");
  auto g2 = weight_basis(MLDEGroup::Gamma0_2, 2);
  REQUIRE(g2.size() == 2);
  CHECK(g2[1].name() == "Theta(1,1)");

  CHECK(weight_basis(MLDEGroup::FullSL2Z, 1).empty());
  auto s2 = weight_basis(MLDEGroup::FullSL2Z, 2);
  REQUIRE(s2.size() == 1);
  CHECK(s2[0].name() == "E4^1E6^0");
  auto s3 = weight_basis(MLDEGroup::FullSL2Z, 3);
  REQUIRE(s3.size() == 1);
  CHECK(s3[0].name() == "E4^0E6^1");
  // weight 12 = 2*6: E4^3 and E6^2
  CHECK(weight_basis(MLDEGroup::FullSL2Z, 6).size() == 2);
}

TEST_CASE("second-order operator annihilates both flowed characters (u = 3)") {
  MLDEOp op = u3_operator();
  for (long j : {0L, 1L}) {
    Puiseux ch = flowed_char(3, j, Rat(10));
    CHECK(mlde_verify(op, ch, Rat(8)));
  }
  // and not a random perturbation
  Puiseux bad = flowed_char(3, 0, Rat(10)) + Puiseux::monomial(Cyc::one(), Rat(2), Rat(10));
  CHECK(!mlde_verify(op, bad, Rat(8)));
}

TEST_CASE("equivalent form with twisted eisenstein coefficients (u = 3)") {
  // D^2 f + (4/3) E4[-1;1] f + (28/3) E4[1;-1] f + (28/3) E4[-1;-1] f = 0,
  // where the first bracket slot is the multiplier phi = e^{2 pi i lambda}
  // and the second twists the theta argument.
  Rat T = 8;
  QMono minus{1, rat(1, 2), 0, 0};
  Puiseux a = twisted_eisenstein(4, rat(1, 2), QMono::one(), T).limit();
  Puiseux b = twisted_eisenstein(4, 0, minus, T).limit();
  Puiseux c = twisted_eisenstein(4, rat(1, 2), minus, T).limit();
  for (long j : {0L, 1L}) {
    Puiseux f = flowed_char(3, j, T);
    Puiseux lhs = d_power(f, 2) + (a.scaled(rat(4, 3)) + (b + c).scaled(rat(28, 3))) * f;
    REQUIRE(lhs.trunc() >= 7);
    for (const auto& [e, cf] : lhs.terms()) CHECK(cf.is_zero());
  }
}

TEST_CASE("fit recovers the operator from its solutions") {
  std::vector<Puiseux> sols = {flowed_char(3, 0, Rat(10)), flowed_char(3, 1, Rat(10))};
  MLDEOp op = mlde_fit(sols, 2, MLDEGroup::Gamma0_2);
  REQUIRE(op.order == 2);
  REQUIRE(op.coeffs.size() == 2);
  CHECK(op.coeffs[0].empty());
  REQUIRE(op.coeffs[1].size() == 1);
  CHECK(op.coeffs[1][0].first == rat(-1, 96));
  CHECK(op.coeffs[1][0].second.name() == "Theta(1,1)");

  // no monic first-order operator has both characters as solutions
  CHECK_THROWS_AS(mlde_fit(sols, 1, MLDEGroup::Gamma0_2), MathError);
}

TEST_CASE("mlde_apply is linear") {
  MLDEOp op = u3_operator();
  Puiseux f = flowed_char(3, 0, Rat(8));
  Puiseux g = dedekind_eta(Rat(8)).pow_int(2);
  Puiseux lhs = mlde_apply(op, f + g.scaled(Rat(3)));
  Puiseux rhs = mlde_apply(op, f) + mlde_apply(op, g).scaled(Rat(3));
  CHECK(Puiseux::agree(lhs, rhs));
}
