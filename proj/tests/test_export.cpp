#include "invariantlab/export_analysis.hpp"
#include "test_support.hpp"

namespace invariantlab {
namespace {

using testing::corpus_table;
using testing::Rng;
using testing::table_of;

TEST(Privilege, CollectsSelectiveElements) {
  ClassTable t = table_of(R"(
class A
feature {C}
  r do end
  s do end
end
class B
feature {C}
  t do end
end
class C
end
)");
  Privilege p = privilege_of("C", t, PrivilegeScope::ExplicitOnly);
  EXPECT_EQ(p, (Privilege{{"A", {"r", "s"}}, {"B", {"t"}}}));
  Privilege full = privilege_of("C", t);
  EXPECT_TRUE(privilege_leq(p, full));
}

TEST(Privilege, AllPublicGivesEqualPrivileges) {
  ClassTable t = table_of("class A feature f do end end class B feature g do end end");
  EXPECT_EQ(privilege_of("A", t), privilege_of("B", t));
  EXPECT_TRUE(privilege_of("A", t, PrivilegeScope::ExplicitOnly).empty());
}

TEST(Privilege, InheritedByDescendants) {
  ClassTable t = corpus_table("spy");
  Privilege spy = privilege_of("SPY", t);
  ASSERT_TRUE(spy.count("PRIVATE"));
  EXPECT_TRUE(spy.at("PRIVATE").count("r"));
  Privilege foe = privilege_of("FOE", t);
  EXPECT_FALSE(foe.count("PRIVATE") && foe.at("PRIVATE").count("r"));
}

TEST(Privilege, Leq) {
  const Privilege rs{{"A", {"r", "s"}}}, r{{"A", {"r"}}};
  EXPECT_TRUE(privilege_leq(rs, rs));
  EXPECT_TRUE(privilege_leq({}, r));
  EXPECT_FALSE(privilege_leq(rs, r));
  EXPECT_TRUE(privilege_leq(r, rs));
}

Privilege random_privilege(Rng& rng) {
  static const std::vector<std::string> classes = {"A", "B", "C"};
  static const std::vector<std::string> feats = {"f", "g", "h"};
  Privilege p;
  for (const auto& c : classes) {
    for (const auto& f : feats) {
      if (rng.uniform(0, 2) == 0) p[c].insert(f);
    }
  }
  return p;
}

TEST(PrivilegeProperty, LeqIsAPartialOrder) {
  for (std::uint32_t seed = 1; seed <= 1000; ++seed) {
    Rng rng(seed);
    const Privilege p = random_privilege(rng), q = random_privilege(rng), r = random_privilege(rng);
    ASSERT_TRUE(privilege_leq(p, p)) << "seed " << seed;
    if (privilege_leq(p, q) && privilege_leq(q, p)) ASSERT_EQ(p, q) << "seed " << seed;
    if (privilege_leq(p, q) && privilege_leq(q, r)) ASSERT_TRUE(privilege_leq(p, r)) << "seed " << seed;
  }
}

TEST(InformationHiding, SpyOnlyFlagsFoeAttempt) {
  auto d = check_information_hiding(corpus_table("spy"));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].caller_class, "FOE");
  EXPECT_EQ(d[0].caller_routine, "attempt");
  EXPECT_EQ(d[0].callee_class, "PRIVATE");
  EXPECT_EQ(d[0].callee_routine, "r");
  EXPECT_EQ(d[0].rule, RulePart::ClassicHiding);
}

TEST(InformationHiding, ObserverIsClean) {
  EXPECT_TRUE(check_information_hiding(corpus_table("observer")).empty());
}

TEST(InformationHiding, MergeAccessesOtherFirst) {
  auto d = check_information_hiding(corpus_table("linked_list_smart_merge"));
  ASSERT_FALSE(d.empty());
  for (const auto& x : d) {
    EXPECT_EQ(x.caller_class, "LINKED_LIST");
    EXPECT_TRUE(x.caller_routine == "merge_right" || x.caller_routine == "merge_left")
        << x.caller_routine;
    EXPECT_EQ(x.callee_routine, "first");
  }
  EXPECT_TRUE(check_information_hiding(corpus_table("linked_list_dumb")).empty());
}

TEST(InformationHiding, SelfClientRule) {
  ClassTable t = table_of(R"(
class A
feature {NONE}
  s do end
feature
  p (o: A) do o.s end
  q do s end
end
)");
  auto d = check_information_hiding(t);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].caller_routine, "p");
}

TEST(ExportConsistency, MarriageBadIsConsistent) {
  ClassTable t = corpus_table("marriage_bad");
  EXPECT_TRUE(check_export_consistency(t, ConsistencyMode::Cases).empty());
  EXPECT_TRUE(check_export_consistency(t, ConsistencyMode::ExportSet).empty());
}

TEST(ExportConsistency, SelectiveCallerPublicCallee) {
  ClassTable t = table_of(R"(
class A
feature
  pub do end
end
class B
feature
  a: A
feature {A}
  sel do a.pub end
end
)");
  for (auto mode : {ConsistencyMode::Cases, ConsistencyMode::ExportSet}) {
    auto d = check_export_consistency(t, mode);
    ASSERT_EQ(d.size(), 1u) << to_string(mode);
    EXPECT_EQ(d[0].caller_routine, "sel");
    EXPECT_EQ(d[0].callee_routine, "pub");
    EXPECT_EQ(d[0].rule, RulePart::BroaderCallee);
  }
}

TEST(ExportConsistency, ReachedThroughUnqualifiedCalls) {
  ClassTable t = table_of(R"(
class A
feature
  pub do end
end
class B
feature
  a: A
feature {A}
  sel do helper end
feature {NONE}
  helper do a.pub end
end
)");
  auto d = check_export_consistency(t, ConsistencyMode::ExportSet);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].caller_routine, "sel");
}

TEST(ExportConsistency, PublicCallerSelectiveCalleeIsFine) {
  ClassTable t = corpus_table("point");
  EXPECT_TRUE(check_export_consistency(t, ConsistencyMode::Cases).empty());
  EXPECT_TRUE(check_export_consistency(corpus_table("observer"), ConsistencyMode::Cases).empty());
}

TEST(ExportConsistency, BothSelectiveComparesPrivileges) {
  ClassTable t = table_of(R"(
class A
feature {B}
  r do end
end
class B
feature
  a: A
feature {C}
  s do a.r end
end
class C
end
class D
feature {A}
  t do end
end
)");
  auto cases = check_export_consistency(t, ConsistencyMode::Cases);
  ASSERT_EQ(cases.size(), 1u);
  EXPECT_EQ(cases[0].caller_routine, "s");
  auto es = check_export_consistency(t, ConsistencyMode::ExportSet);
  ASSERT_EQ(es.size(), 1u);
}

TEST(ExportConsistency, PrecursorClause) {
  ClassTable t = table_of(R"(
class X
feature
  go do end
end
class A
feature {B}
  r do end
end
class B inherit A
feature
  x: X
feature {B}
  r do x.go end
end
)");
  auto d = check_export_consistency(t, ConsistencyMode::ExportSet);
  bool precursor = false;
  for (const auto& x : d) precursor = precursor || x.rule == RulePart::Precursor;
  EXPECT_TRUE(precursor);
}

TEST(ExportConsistency, SpyIsNotRejected) {
  ClassTable t = corpus_table("spy");
  EXPECT_TRUE(check_export_consistency(t, ConsistencyMode::Cases).empty());
  EXPECT_TRUE(check_export_consistency(t, ConsistencyMode::ExportSet).empty());
}

// Random programs whose classes call each other qualified and unqualified.
// `sel` controls whether feature clauses may be selective.
std::string random_program(Rng& rng, int n, bool sel) {
  std::string src;
  for (int i = 0; i < n; ++i) {
    src += "class C" + std::to_string(i) + "\nfeature\n";
    for (int j = 0; j < n; ++j) src += "  a" + std::to_string(j) + ": detachable C" + std::to_string(j) + "\n";
    for (int k = 0; k < 3; ++k) {
      if (sel && rng.coin()) {
        const int e = rng.uniform(-1, n - 1);
        src += e < 0 ? "feature {NONE}\n" : "feature {C" + std::to_string(e) + "}\n";
      } else {
        src += "feature\n";
      }
      src += "  r" + std::to_string(k) + "\n    do\n";
      for (int c = rng.uniform(0, 3); c > 0; --c) {
        const int target = rng.uniform(-1, n - 1);
        const std::string m = "r" + std::to_string(rng.uniform(0, 2));
        if (target < 0) {
          src += "      " + m + "\n";
        } else {
          src += "      if a" + std::to_string(target) + " /= Void then a" + std::to_string(target) +
                 "." + m + " end\n";
        }
      }
      src += "    end\n";
    }
    src += "end\n";
  }
  return src;
}

TEST(ExportConsistencyProperty, NoSelectiveExportsNoDiagnostics) {
  for (std::uint32_t seed = 1; seed <= 150; ++seed) {
    Rng rng(seed);
    const std::string src = random_program(rng, rng.uniform(1, 4), false);
    ClassTable t = table_of(src);
    ASSERT_TRUE(check_export_consistency(t, ConsistencyMode::Cases).empty()) << "seed " << seed;
    ASSERT_TRUE(check_export_consistency(t, ConsistencyMode::ExportSet).empty()) << "seed " << seed;
  }
}

TEST(ExportConsistencyProperty, ExportSetModeStableUnderUnrelatedClasses) {
  for (std::uint32_t seed = 1; seed <= 150; ++seed) {
    Rng rng(seed);
    const std::string src = random_program(rng, rng.uniform(1, 4), true);
    ParseResult pr = parse(src);
    ASSERT_TRUE(pr.ok()) << "seed " << seed;
    ClassTable before = build_class_table(std::move(pr.classes));
    ClassTable after = table_of(src + "class UNRELATED feature z do end end\n");
    auto a = check_export_consistency(before, ConsistencyMode::ExportSet);
    auto b = check_export_consistency(after, ConsistencyMode::ExportSet);
    ASSERT_EQ(a.size(), b.size()) << "seed " << seed << "\n" << src;
    for (std::size_t i = 0; i < a.size(); ++i) {
      ASSERT_EQ(a[i].caller_routine, b[i].caller_routine) << "seed " << seed;
      ASSERT_EQ(a[i].callee_routine, b[i].callee_routine) << "seed " << seed;
    }
  }
}

}  // namespace
}  // namespace invariantlab
