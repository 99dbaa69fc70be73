#include <catch2/catch_amalgamated.hpp>

#include "ergmbayes/formula.hpp"

using ergmbayes::FormulaError;
using ergmbayes::ModelSpec;
using ergmbayes::ModelTerm;
using ergmbayes::parse_formula;
using ergmbayes::render_formula;

TEST_CASE("single term", "[formula]") {
  const ModelSpec spec = parse_formula("edges");
  REQUIRE(spec.dim() == 1);
  CHECK(spec.terms[0] == ModelTerm::edges());
}

TEST_CASE("R-style formula with quotes and fixed-decay arguments", "[formula]") {
  const ModelSpec spec = parse_formula(
      "edges + nodematch('Grade') + gwdegree(0.2, fixed = TRUE) + gwesp(0.2, fixed = TRUE)");
  REQUIRE(spec.dim() == 4);
  CHECK(spec.terms[0] == ModelTerm::edges());
  CHECK(spec.terms[1] == ModelTerm::nodematch("Grade"));
  CHECK(spec.terms[2] == ModelTerm::gwdegree(0.2));
  CHECK(spec.terms[3] == ModelTerm::gwesp(0.2));
}

TEST_CASE("whitespace insensitivity", "[formula]") {
  const auto a = parse_formula("edges+triangle+kstar(2)");
  const auto b = parse_formula("  edges  +  triangle  +  kstar ( 2 ) ");
  CHECK(a.terms == b.terms);
}

TEST_CASE("quotes around attribute names are optional", "[formula]") {
  CHECK(parse_formula("nodematch(Grade)").terms == parse_formula("nodematch('Grade')").terms);
  CHECK(parse_formula("nodematch(\"Grade\")").terms ==
        parse_formula("nodematch('Grade')").terms);
}

TEST_CASE("render round trip", "[formula]") {
  const std::vector<std::string> cases = {
      "edges",
      "edges + triangle",
      "edges + nodematch(Grade) + gwdegree(0.2) + gwesp(0.2)",
      "kstar(2) + kstar(3)",
      "gwesp(1.5) + gwdegree(0.25)",
  };
  for (const auto& text : cases) {
    const ModelSpec spec = parse_formula(text);
    const std::string rendered = render_formula(spec);
    CHECK(parse_formula(rendered).terms == spec.terms);
    CHECK(rendered == text);  // canonical spelling is stable
  }
  // quoted spelling is preserved when the attribute is not identifier-like
  const ModelSpec odd = parse_formula("nodematch('grade level')");
  CHECK(parse_formula(render_formula(odd)).terms == odd.terms);
}

TEST_CASE("rejections", "[formula]") {
  CHECK_THROWS_AS(parse_formula(""), FormulaError);
  CHECK_THROWS_AS(parse_formula("edges +"), FormulaError);
  CHECK_THROWS_AS(parse_formula("edges + foo(1)"), FormulaError);
  CHECK_THROWS_AS(parse_formula("edges(3)"), FormulaError);
  CHECK_THROWS_AS(parse_formula("gwesp()"), FormulaError);
  CHECK_THROWS_AS(parse_formula("gwesp(0.2, fixed = FALSE)"), FormulaError);
  CHECK_THROWS_AS(parse_formula("kstar(1)"), FormulaError);
  CHECK_THROWS_AS(parse_formula("nodematch()"), FormulaError);
  CHECK_THROWS_AS(parse_formula("edges + edges"), FormulaError);
  CHECK_THROWS_AS(parse_formula("edges edges"), FormulaError);
}

TEST_CASE("error carries a position", "[formula]") {
  try {
    parse_formula("edges + foo(1)");
    FAIL("expected FormulaError");
  } catch (const FormulaError& e) {
    CHECK(std::string(e.what()).find("foo") != std::string::npos);
    CHECK(e.position() >= 8);
  }
}
