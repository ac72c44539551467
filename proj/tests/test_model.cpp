#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "iratepl2c/model.hpp"

#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace iratepl2c;

TEST_CASE("web portal fixture parses with its groups and constraints") {
  const FeatureModel model = testsupport::web_portal_model();

  CHECK(model.root() == "WebPortal");
  CHECK(model.size() == 23);

  auto xors = model.xor_groups();
  REQUIRE(xors.size() == 3);
  CHECK(xors[0]->members == std::vector<std::string>{"ms", "Sec", "min"});
  CHECK(xors[1]->members == std::vector<std::string>{"XML", "Database"});
  CHECK(xors[1]->parent == "Persistence");
  CHECK(xors[2]->members == std::vector<std::string>{"DB", "File"});
  CHECK(xors[2]->parent == "Database");

  REQUIRE(model.constraints().size() == 6);
  CHECK(model.constraints()[4].str() == "requires DataTransfer https");
  CHECK(model.constraints()[2].str() == "excludes https ms");
  CHECK(model.constraints()[2].id == 2);

  CHECK(model.feature("WebServer").kind == FeatureKind::mandatory);
  CHECK(model.feature("Content").kind == FeatureKind::mandatory);
  CHECK(model.feature("Static").kind == FeatureKind::mandatory);
  CHECK(model.feature("HTML").kind == FeatureKind::mandatory);
  CHECK(model.feature("Persistence").kind == FeatureKind::optional);
  CHECK(model.feature("XML").kind == FeatureKind::group_member);
}

TEST_CASE("a single bare line is a minimal model") {
  const FeatureModel model = parse_model("WebPortal\n");
  CHECK(model.root() == "WebPortal");
  CHECK(model.size() == 1);
  CHECK(model.groups().empty());
  CHECK(model.constraints().empty());
  CHECK(model.feature("WebPortal").kind == FeatureKind::mandatory);
}

TEST_CASE("parse errors") {
  SUBCASE("constraint with undeclared feature") {
    CHECK_THROWS_WITH_AS(parse_model("a!\n  b?\n---\nrequires b ghost\n"),
                         doctest::Contains("unknown feature 'ghost'"),
                         ParseError);
  }
  SUBCASE("duplicate feature name") {
    CHECK_THROWS_WITH_AS(parse_model("a!\n  b?\n  b?\n"),
                         doctest::Contains("duplicate feature name"),
                         ParseError);
  }
  SUBCASE("two roots") {
    CHECK_THROWS_WITH_AS(parse_model("a!\nb!\n"),
                         doctest::Contains("multiple root"), ParseError);
  }
  SUBCASE("optional root") {
    CHECK_THROWS_AS(parse_model("a?\n"), ParseError);
  }
  SUBCASE("group with one member") {
    CHECK_THROWS_WITH_AS(parse_model("a!\n  <xor>\n    b\n"),
                         doctest::Contains("at least two members"), ParseError);
  }
  SUBCASE("marked group member") {
    CHECK_THROWS_AS(parse_model("a!\n  <xor>\n    b!\n    c\n"), ParseError);
  }
  SUBCASE("bare feature outside a group") {
    CHECK_THROWS_AS(parse_model("a!\n  b\n"), ParseError);
  }
  SUBCASE("indentation jump") {
    CHECK_THROWS_AS(parse_model("a!\n      b?\n"), ParseError);
  }
  SUBCASE("odd indentation") {
    CHECK_THROWS_AS(parse_model("a!\n   b?\n"), ParseError);
  }
  SUBCASE("self-referring constraint") {
    CHECK_THROWS_AS(parse_model("a!\n  b?\n---\nexcludes b b\n"), ParseError);
  }
  SUBCASE("line numbers are reported") {
    try {
      parse_model("a!\n  b?\n  b?\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
}

TEST_CASE("descendants") {
  const FeatureModel model = testsupport::web_portal_model();

  SUBCASE("subtree of Persistence") {
    CHECK(descendants(model, "Persistence") ==
          std::set<std::string>{"XML", "Database", "DB", "File"});
  }
  SUBCASE("leaves have no descendants") {
    CHECK(descendants(model, "Static").empty());
    CHECK(descendants(model, "min").empty());
  }
  SUBCASE("unknown feature") {
    CHECK_THROWS_AS(descendants(model, "Ghost"), ValidationError);
  }
}

namespace {

// Independent oracle: repeatedly scan the parent table instead of walking
// child lists.
std::set<std::string> descendants_by_parent_scan(const FeatureModel& model,
                                                 const std::string& feature) {
  std::set<std::string> result;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const std::string& name : model.feature_order()) {
      if (result.count(name)) continue;
      const std::string& parent = model.feature(name).parent;
      if (parent == feature || result.count(parent)) {
        result.insert(name);
        changed = true;
      }
    }
  }
  return result;
}

}  // namespace

TEST_CASE("descendants matches the parent-scan oracle on random trees") {
  std::mt19937_64 rng(20240811);
  for (int round = 0; round < 50; ++round) {
    const FeatureModel model = testsupport::random_model(rng);
    for (const std::string& name : model.feature_order()) {
      CHECK(descendants(model, name) == descendants_by_parent_scan(model, name));
    }
  }
}

TEST_CASE("parse/serialize round-trip is the identity on model values") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 100; ++round) {
    const FeatureModel model = testsupport::random_model(rng);
    const FeatureModel reparsed = parse_model(serialize_model(model));
    CHECK(reparsed == model);
  }
  const FeatureModel web = testsupport::web_portal_model();
  CHECK(parse_model(serialize_model(web)) == web);
}

TEST_CASE("tree property: every non-root feature has exactly one parent") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 100; ++round) {
    const FeatureModel model = testsupport::random_model(rng);
    std::size_t edges = 0;
    for (const std::string& name : model.feature_order()) {
      if (name != model.root()) {
        CHECK(model.has_feature(model.feature(name).parent));
        ++edges;
      }
    }
    CHECK(edges == model.size() - 1);
  }
}

TEST_CASE("group members share the group's tree parent") {
  std::mt19937_64 rng(123);
  for (int round = 0; round < 100; ++round) {
    const FeatureModel model = testsupport::random_model(rng);
    for (const Group& g : model.groups()) {
      CHECK(g.members.size() >= 2);
      for (const std::string& member : g.members) {
        CHECK(model.feature(member).parent == g.parent);
        CHECK(model.feature(member).kind == FeatureKind::group_member);
      }
    }
  }
}
