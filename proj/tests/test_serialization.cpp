#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "qva/characters.hpp"
#include "qva/serialization.hpp"

using namespace qva;

TEST_CASE("puiseux round trip") {
  Puiseux p = Puiseux::monomial(Cyc::root_of_unity(8, 3), rat(1, 24), Rat(5)) +
              Puiseux::monomial(Cyc(rat(7, 3)), rat(3, 2), Rat(5));
  Json j = puiseux_to_json(p);
  Puiseux p2 = puiseux_from_json(j);
  CHECK(puiseux_to_json(p2) == j);
  CHECK(Puiseux::agree(p, p2));
  CHECK(p.trunc() == p2.trunc());
  CHECK(p.ram() == p2.ram());

  // rational coefficients serialize as plain strings
  Json jr = puiseux_to_json(Puiseux::from_rat(rat(-2, 3), Rat(1)));
  CHECK(jr["terms"][0][1] == "-2/3");
}

TEST_CASE("character expression round trip") {
  CharExpr e = build_sl2_boundary_char(3, 1).flowed(sl2_flow(rat(-1, 2)));
  Json je = charexpr_to_json(e);
  CharExpr e2 = charexpr_from_json(je);
  CHECK(charexpr_to_json(e2) == je);

  Specialization s;
  s.trunc = 6;
  s.set("y", QMono{1, 0, 0, 0});
  s.set("z", QMono{1, rat(1, 7), 0, 0});
  Puiseux a = e.evaluate(s), b = e2.evaluate(s);
  CHECK(Puiseux::agree(a, b));
  CHECK(a.trunc() == b.trunc());
}

TEST_CASE("differential operator round trip") {
  MLDEOp op;
  op.order = 2;
  op.group = MLDEGroup::Gamma0_2;
  op.coeffs.resize(2);
  op.coeffs[1].emplace_back(rat(-1, 96), BasisForm{MLDEGroup::Gamma0_2, 1, 1, 0, 0});
  Json jo = mlde_to_json(op);
  CHECK(jo["group"] == "Gamma0_2");
  MLDEOp op2 = mlde_from_json(jo);
  CHECK(mlde_to_json(op2) == jo);
  REQUIRE(op2.coeffs[1].size() == 1);
  CHECK(op2.coeffs[1][0].second.name() == "Theta(1,1)");
  CHECK(op2.coeffs[1][0].first == rat(-1, 96));

  MLDEOp op3;
  op3.order = 3;
  op3.group = MLDEGroup::FullSL2Z;
  op3.coeffs.resize(3);
  op3.coeffs[1].emplace_back(rat(-235, 4), BasisForm{MLDEGroup::FullSL2Z, 0, 0, 1, 0});
  op3.coeffs[2].emplace_back(rat(-455, 8), BasisForm{MLDEGroup::FullSL2Z, 0, 0, 0, 1});
  Json j3 = mlde_to_json(op3);
  CHECK(j3["group"] == "full_SL2Z");
  CHECK(mlde_to_json(mlde_from_json(j3)) == j3);
}

TEST_CASE("basis form lookup by name") {
  BasisForm t = basis_form_from_name(MLDEGroup::Gamma0_2, "Theta(1,2)");
  CHECK(t.i == 1);
  CHECK(t.j == 2);
  BasisForm e = basis_form_from_name(MLDEGroup::FullSL2Z, "E4^0E6^1");
  CHECK(e.b == 1);
  CHECK_THROWS_AS(basis_form_from_name(MLDEGroup::Gamma0_2, "Theta(9,9)"), std::invalid_argument);
}

TEST_CASE("fusion table export") {
  Level l(2, 3);
  auto labels = admissible_labels(l, Convention::HW);
  std::vector<std::pair<std::pair<ModuleLabel, ModuleLabel>, FusionResult>> pairs;
  for (const auto& a : labels)
    for (const auto& b : labels)
      pairs.push_back({{{ModuleKind::HW, a}, {ModuleKind::HW, b}}, fuse_hw_hw(l, a, b)});
  Json jt = fusion_table_to_json(l, pairs);
  CHECK(jt["level"]["p"] == 2);
  CHECK(jt["level"]["q"] == 3);
  REQUIRE(jt["pairs"].size() == 9);
  // the vacuum square appears with the vacuum as its only summand
  bool found = false;
  for (const auto& e : jt["pairs"])
    if (e["a"] == "L(-4/3,0)" && e["b"] == "L(-4/3,0)") {
      found = true;
      REQUIRE(e["result"].size() == 1);
      CHECK(e["result"][0] == "L(-4/3,0)");
    }
  CHECK(found);
}
