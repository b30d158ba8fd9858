#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "nilsmooth/documents.hpp"
#include "nilsmooth/error.hpp"

using namespace nilsmooth;

namespace {

std::string schema_message(const Json& doc, Json (*load)(const Json&)) {
  try {
    load(doc);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
    return e.what();
  }
  return "";
}

Json reload_action(const Json& doc) { return to_document(action_from_document(doc)); }
Json reload_group(const Json& doc) { return to_document(groupspec_from_document(doc)); }
Json reload_decomposition(const Json& doc) { return to_document(decomposition_from_document(doc)); }

std::vector<double> samples(const IntervalFamily& fam) {
  std::vector<double> xs;
  for (const Interval& it : fam.items())
    for (double s : {0.1, 0.5, 0.93}) xs.push_back(it.position + s * it.length);
  return xs;
}

}  // namespace

TEST(GroupDocument, RoundTrips) {
  for (const GroupSpec& g : {GroupSpec::heisenberg(), GroupSpec::unitriangular(4), GroupSpec::free_abelian(2)}) {
    const Json doc = to_document(g);
    EXPECT_EQ(doc.at("schema"), kGroupSpecSchema);
    const GroupSpec back = groupspec_from_document(doc);
    EXPECT_EQ(back.generator_names, g.generator_names);
    ASSERT_EQ(back.generators.size(), g.generators.size());
    for (std::size_t i = 0; i < g.generators.size(); ++i) EXPECT_EQ(back.generators[i], g.generators[i]);
    EXPECT_EQ(to_document(back), doc);
  }
}

TEST(GroupDocument, BigEntriesSurviveAsStrings) {
  const GroupElement x = GroupElement::elementary(3, 2, 1);
  const GroupElement y = GroupElement::elementary(3, 3, 2);
  GroupSpec g = GroupSpec::heisenberg();
  g.generators[0] = compose(power(y, 1LL << 40), power(x, 1LL << 40));
  const GroupSpec back = groupspec_from_document(to_document(g));
  EXPECT_EQ(back.generators[0], g.generators[0]);
}

TEST(ActionDocument, IsAFixedPointOfReloading) {
  const std::vector<LineAction> actions{heisenberg_mixed_action({}), farb_franks_action(GroupSpec::heisenberg(), 2),
                                        denjoy_action({.orbit = 12}), z1_action(3), trivial_action()};
  for (const LineAction& a : actions) {
    const Json doc = to_document(a);
    EXPECT_EQ(reload_action(doc), doc);
    const LineAction back = action_from_document(doc);
    for (std::size_t m = 0; m < a.map_count(); ++m)
      for (double x : samples(a.family())) {
        try {
          EXPECT_DOUBLE_EQ(back.map(m).evaluate(x), a.map(m).evaluate(x));
        } catch (const Error&) {
          EXPECT_THROW(back.map(m).evaluate(x), Error);
        }
      }
  }
}

TEST(ActionDocument, SmoothedActionRoundTrips) {
  const LineAction a = z1_action(2);
  SmoothingConfig c;
  c.alpha = 0.5;
  const SmoothedAction sm = smooth(a, decompose(a), c);
  const Json doc = to_document(sm.action);
  EXPECT_EQ(reload_action(doc), doc);
}

TEST(DecompositionDocument, RoundTrips) {
  const LineAction a = heisenberg_mixed_action({});
  const Json doc = to_document(decompose(a));
  EXPECT_EQ(reload_decomposition(doc), doc);
  EXPECT_TRUE(check_structure(decomposition_from_document(doc), a).all_pass());
}

TEST(ConjugacyDocument, ReproducesPsi) {
  MixedParams p;
  p.window = 2;
  const auto a = std::make_shared<const LineAction>(heisenberg_mixed_action(p));
  SmoothingConfig c;
  c.alpha = 0.2;
  const SmoothedAction sm = smooth(*a, decompose(*a), c);
  const Json doc = to_document(sm.conjugacy, *a);
  const Conjugacy back = conjugacy_from_document(doc, a);
  for (double x : samples(a->family())) EXPECT_DOUBLE_EQ(back.evaluate(x), sm.conjugacy.evaluate(x));
  EXPECT_EQ(to_document(back, *a), doc);
}

TEST(Schema, CorruptedFieldsAreNamed) {
  const Json good = to_document(heisenberg_mixed_action({}));

  Json bad = good;
  bad["schema"] = "action-v0";
  EXPECT_NE(schema_message(bad, reload_action).find("field 'schema'"), std::string::npos);

  bad = good;
  bad["maps"][1]["pieces"][0]["source"] = "(1,";
  EXPECT_NE(schema_message(bad, reload_action).find("maps[1].pieces[0].source"), std::string::npos);

  bad = good;
  bad["layout"]["intervals"][0].erase("length");
  EXPECT_NE(schema_message(bad, reload_action).find("layout.intervals[0].length"), std::string::npos);

  bad = good;
  bad["group"]["generators"][0][0][0] = 2;
  EXPECT_NE(schema_message(bad, reload_action).find("group.generators[0]"), std::string::npos);

  Json g = to_document(GroupSpec::heisenberg());
  g["generator_names"] = Json::array({"f"});
  EXPECT_NE(schema_message(g, reload_group).find("field 'generator_names'"), std::string::npos);
}

TEST(Schema, RandomCorruptionNeverCrashes) {
  const Json good = to_document(z1_action(2));
  const std::string text = good.dump();
  std::mt19937 rng(17);
  for (int k = 0; k < 300; ++k) {
    std::string t = text;
    t[rng() % t.size()] = "0x-[]{}\",:a"[rng() % 11];
    Json doc;
    try {
      doc = Json::parse(t);
    } catch (const Json::exception&) {
      continue;
    }
    try {
      action_from_document(doc);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Config) << e.what();
    }
  }
}

TEST(Files, WriteThenReadAndMissingFileIsAConfigError) {
  const auto path = std::filesystem::temp_directory_path() / "nilsmooth_doc_test.json";
  const Json doc = to_document(GroupSpec::heisenberg());
  write_document(path.string(), doc);
  EXPECT_EQ(read_document(path.string()), doc);
  std::filesystem::remove(path);
  try {
    read_document(path.string());
    FAIL() << "expected a config error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
  }
}
