#include "invariantlab/class_table.hpp"
#include "test_support.hpp"

namespace invariantlab {
namespace {

using testing::Rng;
using testing::table_of;

ClassTable build(const std::string& src) {
  ParseResult pr = parse(src);
  EXPECT_TRUE(pr.ok());
  return build_class_table(std::move(pr.classes));
}

TEST(ClassTable, FlattensInheritedFeaturesAndInvariants) {
  ClassTable t = table_of(R"(
class A
feature
  x: INTEGER
  f do x := 1 end
invariant
  base: x >= 0
end
class B inherit A
feature
  y: BOOLEAN
invariant
  own: y implies x > 0
end
)");
  const FlatClass& b = t.at("B");
  ASSERT_EQ(b.features.size(), 3u);
  EXPECT_EQ(b.features[0].name(), "x");
  EXPECT_EQ(b.features[0].origin, "A");
  EXPECT_EQ(b.features[2].origin, "B");
  ASSERT_EQ(b.invariant.size(), 2u);
  EXPECT_EQ(b.invariant[0].clause->label(), "base");
  EXPECT_EQ(b.invariant[1].origin, "B");
  EXPECT_EQ(b.attributes().size(), 2u);
  EXPECT_EQ(b.routines().size(), 1u);
}

TEST(ClassTable, RedefinitionReplacesInPlaceAndRecordsPrecursor) {
  ClassTable t = table_of(R"(
class A
feature
  f do end
  g do end
end
class B inherit A
feature {A}
  f do end
end
)");
  const FlatClass& b = t.at("B");
  ASSERT_EQ(b.features.size(), 2u);
  EXPECT_EQ(b.features[0].name(), "f");
  EXPECT_EQ(b.features[0].origin, "B");
  ASSERT_TRUE(b.features[0].is_redefinition());
  EXPECT_TRUE(b.features[0].precursor_exports->is_all());
  EXPECT_EQ(b.features[0].precursor_origin, "A");
}

TEST(ClassTable, Descendants) {
  ClassTable t = table_of("class A end class B inherit A end class C inherit B end class D end");
  EXPECT_EQ(t.descendants("A"), (std::set<std::string>{"A", "B", "C"}));
  EXPECT_TRUE(t.is_descendant("C", "A"));
  EXPECT_FALSE(t.is_descendant("A", "C"));
  EXPECT_EQ(t.ancestors("C"), (std::vector<std::string>{"C", "B", "A"}));
}

TEST(ClassTable, EffectiveExportClosesUnderDescendants) {
  ClassTable t = table_of("class A end class B inherit A end class C end");
  EXPECT_EQ(effective_export(ExportSet::of({"A"}), t), (std::set<std::string>{"A", "B"}));
  EXPECT_EQ(effective_export(ExportSet::all(), t), (std::set<std::string>{"A", "B", "C"}));
  EXPECT_TRUE(effective_export(ExportSet::none(), t).empty());
  EXPECT_THROW(effective_export(ExportSet::of({"Z"}), t), SemanticError);
}

TEST(ClassTable, Conformance) {
  ClassTable t = table_of("class A end class B inherit A end");
  const TypeRef a{"A", false}, b{"B", false}, da{"A", true}, none{kVoidType, false};
  const TypeRef i{kInteger, false};
  EXPECT_TRUE(conforms(b, a, t));
  EXPECT_FALSE(conforms(a, b, t));
  EXPECT_TRUE(conforms(a, da, t));
  EXPECT_TRUE(conforms(none, da, t));
  EXPECT_FALSE(conforms(i, a, t));
  EXPECT_TRUE(conforms(i, i, t));
}

TEST(ClassTable, UnqualifiedFeaturesOfClause) {
  ClassTable t = table_of(R"(
class P
feature
  x: INTEGER
  other: detachable P
  L: INTEGER constant 3
  ok: BOOLEAN do Result := True end
invariant
  c1: x <= L
  c2: other /= Void implies other.x = x
  c3: ok
end
)");
  const auto& inv = t.at("P").invariant;
  EXPECT_EQ(unqualified_features_of(*inv[0].clause), (std::set<std::string>{"x", "L"}));
  EXPECT_EQ(unqualified_features_of(*inv[1].clause), (std::set<std::string>{"other", "x"}));
  EXPECT_EQ(unqualified_features_of(*inv[2].clause), (std::set<std::string>{"ok"}));
}

TEST(ClassTable, CallCollectors) {
  ClassTable t = table_of(R"(
class P
feature
  n: detachable P
  a do b; n.a; if n /= Void then c (1) end end
  b do end
  c (i: INTEGER) do end
end
)");
  const FeatureDecl* a = t.at("P").find("a")->decl;
  EXPECT_EQ(unqualified_calls_in(a->body), (std::set<std::string>{"b", "c"}));
  auto q = qualified_calls_in(a->body);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_EQ(q[0]->name, "a");
}

TEST(ClassTableErrors, Rejected) {
  const std::vector<std::pair<const char*, const char*>> bad = {
      {"duplicate class", "class A end class A end"},
      {"unknown parent", "class A inherit Z end"},
      {"cycle", "class A inherit B end class B inherit A end"},
      {"class named ANY", "class ANY end"},
      {"unknown type", "class A feature x: Z end"},
      {"detachable builtin", "class A feature x: detachable INTEGER end"},
      {"unknown export", "class A feature {Z} x: INTEGER end"},
      {"reserved name", "class A feature tribe_put do end end"},
      {"duplicate feature", "class A feature x: INTEGER x: BOOLEAN end"},
      {"kind change", "class A feature f do end end class B inherit A feature f: INTEGER end"},
      {"broadened export",
       "class A feature {A} f do end end class B inherit A feature f do end end class C end"},
      {"creator not a procedure", "class A create x feature x: INTEGER end"},
      {"procedure as value", "class A feature p do end x: INTEGER invariant x = p end"},
      {"wrong argument count", "class A feature p (i: INTEGER) do p end end"},
      {"argument type", "class A feature p (i: INTEGER) do p (True) end end"},
      {"assign to argument", "class A feature p (i: INTEGER) do i := 1 end end"},
      {"assign type", "class A feature x: INTEGER p do x := True end end"},
      {"non-boolean assertion", "class A feature x: INTEGER invariant x + 1 end"},
      {"mixed equality", "class A feature x: INTEGER invariant x = True end"},
      {"create builtin", "class A feature x: INTEGER p do create x end end"},
      {"create with non-creator",
       "class B create make feature make do end other do end end "
       "class A feature b: B p do create b.other end end"},
      {"default creation with create clause",
       "class B create make feature make do end end class A feature b: B p do create b end end"},
      {"unknown feature", "class A feature p do q end end"},
      {"call on integer", "class A feature x: INTEGER p do x.p end end"},
  };
  for (const auto& [what, src] : bad) {
    ParseResult pr = parse(src);
    ASSERT_TRUE(pr.ok()) << what;
    EXPECT_THROW(build_class_table(std::move(pr.classes)), SemanticError) << what;
  }
}

TEST(ClassTableErrors, ResultInProcedureIsAParseError) {
  EXPECT_FALSE(parse("class A feature p do Result := 1 end end").ok());
}

TEST(ClassTableErrors, TribePutOnlyAsInstruction) {
  EXPECT_NO_THROW(build("class A feature p (o: A) do tribe_put (Current, o) end end"));
  EXPECT_THROW(build("class A feature o: A invariant tribe_put (Current, o) end"), SemanticError);
  EXPECT_NO_THROW(build("class A feature o: A invariant tribe_has (Current, o) end"));
}

TEST(ClassTable, CorpusBuilds) {
  for (const char* f : {"point", "point_driver", "observer", "observer_leak", "marriage_bad",
                        "marriage_good", "marriage_drink", "spy", "has_point_mischief",
                        "linked_list_dumb", "linked_list_smart_merge", "divorce",
                        "tribes_marriage"}) {
    EXPECT_NO_THROW(testing::corpus_table(f)) << f;
  }
}

// Random single-inheritance forests: descendants must be reflexive and
// transitive, and agree with the parent chain.
TEST(ClassTableProperty, DescendantRelation) {
  for (std::uint32_t seed = 1; seed <= 200; ++seed) {
    Rng rng(seed);
    const int n = rng.uniform(1, 8);
    std::string src;
    std::vector<int> parent(n, -1);
    for (int i = 0; i < n; ++i) {
      src += "class C" + std::to_string(i);
      if (i > 0 && rng.coin()) {
        parent[i] = rng.uniform(0, i - 1);
        src += " inherit C" + std::to_string(parent[i]);
      }
      src += " end\n";
    }
    ClassTable t = build(src);
    for (int i = 0; i < n; ++i) {
      const std::string ci = "C" + std::to_string(i);
      ASSERT_TRUE(t.is_descendant(ci, ci)) << "seed " << seed;
      for (int j = 0; j < n; ++j) {
        const std::string cj = "C" + std::to_string(j);
        bool chain = false;
        for (int k = i; k != -1; k = parent[k]) chain = chain || k == j;
        ASSERT_EQ(t.is_descendant(ci, cj), chain) << "seed " << seed << " " << ci << " " << cj;
        const TypeRef ti{ci, false}, tj{cj, false};
        ASSERT_EQ(conforms(ti, tj, t), chain) << "seed " << seed;
      }
    }
  }
}

}  // namespace
}  // namespace invariantlab
