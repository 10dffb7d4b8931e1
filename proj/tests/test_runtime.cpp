#include <algorithm>

#include "invariantlab/runtime.hpp"
#include "test_support.hpp"

namespace invariantlab {
namespace {

using testing::corpus_table;
using testing::Rng;
using testing::table_of;

RuntimeConfig config(Policy p, const std::string& cls, const std::string& creator = "make") {
  RuntimeConfig c;
  c.policy = p;
  c.root_class = cls;
  c.root_creator = creator;
  return c;
}

bool has_line(const std::vector<std::string>& trace, const std::string& line) {
  return std::find(trace.begin(), trace.end(), line) != trace.end();
}

TEST(Heap, DefaultsAndIds) {
  ClassTable t = corpus_table("marriage_bad");
  Heap h;
  ObjectId a = h.allocate(t.at("PERSON"));
  ObjectId b = h.allocate(t.at("PERSON"));
  EXPECT_EQ(a, 1);
  EXPECT_EQ(b, 2);
  EXPECT_EQ(h.at(a).fields.at("is_married"), Value::of_bool(false));
  EXPECT_TRUE(h.at(a).fields.at("spouse").is_void());
  EXPECT_EQ(default_value({kInteger, false}), Value::of_int(0));
}

TEST(Run, PointDriverClassic) {
  RunResult r = run_program(corpus_table("point_driver"), config(Policy::Classic, "APP"));
  ASSERT_EQ(r.status, RunStatus::Completed) << r.error;
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.heap.at(2).cls, "POINT");
  EXPECT_EQ(r.heap.at(2).fields.at("x"), Value::of_int(4));
  ASSERT_GE(r.trace.size(), 6u);
  EXPECT_EQ(r.trace[0], "CREATE 1:APP");
  EXPECT_EQ(r.trace[2], "CREATE 2:POINT");
  EXPECT_EQ(r.trace[3], "CHECK invariant 0 <= x ok");
  EXPECT_EQ(r.trace[5], "CALLQ 1->2.move_left");
  EXPECT_TRUE(has_line(r.trace, "CHECK invariant-before 0 <= x ok"));
}

TEST(Run, UnqualifiedCallSkipsInvariant) {
  RunResult r = run_program(corpus_table("point_driver"), config(Policy::Orule, "APP"));
  ASSERT_EQ(r.status, RunStatus::Completed);
  for (const auto& line : r.trace) EXPECT_EQ(line.find("go_back"), std::string::npos) << line;
  // go_back leaves x = -1 mid-body; only the postconditions are checked then.
  EXPECT_TRUE(has_line(r.trace, "CHECK postcondition x = old x - 1 ok"));
}

TEST(Run, CurrentQualifiedCallChecksInvariant) {
  ClassTable t = table_of(R"(
class A
create make
feature
  x: INTEGER
  make do Current.bump end
  bump do x := x - 1 end
invariant
  nonneg: x >= 0
end
)");
  RunResult r = run_program(t, config(Policy::Orule, "A"));
  ASSERT_EQ(r.status, RunStatus::Violation);
  EXPECT_EQ(r.violations[0].tag, "nonneg");
  EXPECT_EQ(r.violations[0].routine, "bump");
  EXPECT_TRUE(has_line(r.trace, "CALLQ 1->1.bump"));
}

TEST(Run, MarriageBadBlamesSpouse) {
  for (Policy p : {Policy::Orule, Policy::Classic}) {
    RunResult r = run_program(corpus_table("marriage_bad"), config(p, "APP"));
    ASSERT_EQ(r.status, RunStatus::Violation) << to_string(p);
    ASSERT_EQ(r.violations.size(), 1u);
    const auto& v = r.violations[0];
    EXPECT_EQ(v.kind, ContractViolation::Kind::Invariant);
    EXPECT_EQ(v.tag, "monogamy");
    EXPECT_EQ(v.blamed, 3);
    EXPECT_EQ(v.routine, "set_married");
    EXPECT_EQ(r.trace.back(), "CHECK invariant monogamy FAIL");
  }
}

TEST(Run, MarriageGoodIsClean) {
  for (Policy p : {Policy::Orule, Policy::Classic}) {
    RunResult r = run_program(corpus_table("marriage_good"), config(p, "APP"));
    EXPECT_EQ(r.status, RunStatus::Completed) << to_string(p) << " " << r.error;
  }
}

TEST(Run, ObserverNeedsOrule) {
  ClassTable t = corpus_table("observer");
  RunResult orule = run_program(t, config(Policy::Orule, "APP"));
  EXPECT_EQ(orule.status, RunStatus::Completed);
  RunResult classic = run_program(t, config(Policy::Classic, "APP"));
  ASSERT_EQ(classic.status, RunStatus::Violation);
  EXPECT_EQ(classic.violations[0].phase, "before");
  EXPECT_EQ(classic.violations[0].tag, "faithful");
  EXPECT_EQ(classic.violations[0].routine, "update");
}

TEST(Run, DivorceCaughtOnlyByClassic) {
  ClassTable t = corpus_table("divorce");
  EXPECT_EQ(run_program(t, config(Policy::Orule, "APP")).status, RunStatus::Completed);
  EXPECT_EQ(run_program(t, config(Policy::Classic, "APP")).status, RunStatus::Violation);
}

TEST(Run, PreconditionBlamesCaller) {
  ClassTable t = table_of(R"(
class B
feature
  f (i: INTEGER) require positive: i > 0 do end
end
class A
create make
feature
  b: B
  make do create b; b.f (0) end
end
)");
  RunResult r = run_program(t, config(Policy::Orule, "A"));
  ASSERT_EQ(r.status, RunStatus::Violation);
  EXPECT_EQ(r.violations[0].kind, ContractViolation::Kind::Precondition);
  EXPECT_EQ(r.violations[0].tag, "positive");
  EXPECT_EQ(r.violations[0].blamed, 1);
}

TEST(Run, VoidCall) {
  ClassTable t = table_of(R"(
class B feature f do end end
class A
create make
feature
  b: detachable B
  make do b.f end
end
)");
  RunResult r = run_program(t, config(Policy::Orule, "A"));
  ASSERT_EQ(r.status, RunStatus::Violation);
  EXPECT_EQ(r.violations[0].kind, ContractViolation::Kind::VoidCall);
}

TEST(Run, FuelExhaustion) {
  ClassTable t = table_of(R"(
class A
create make
feature
  make do from until False loop end end
end
)");
  RuntimeConfig c = config(Policy::Orule, "A");
  c.fuel = 50;
  EXPECT_EQ(run_program(t, c).status, RunStatus::FuelExhausted);
}

TEST(Run, DepthLimit) {
  ClassTable t = table_of("class A create make feature make do make end end");
  RuntimeConfig c = config(Policy::Orule, "A");
  c.fuel = 1'000'000;
  c.max_depth = 20;
  EXPECT_EQ(run_program(t, c).status, RunStatus::FuelExhausted);
}

TEST(Run, KeepGoingRecordsEveryViolation) {
  ClassTable t = table_of(R"(
class A
create make
feature
  x: INTEGER
  make do Current.dec; Current.dec end
  dec do x := x - 1 end
invariant
  x >= 0
end
)");
  RuntimeConfig c = config(Policy::Orule, "A");
  c.keep_going = true;
  RunResult r = run_program(t, c);
  EXPECT_GE(r.violations.size(), 2u);
}

TEST(Run, UnknownRootIsAnError) {
  EXPECT_THROW(run_program(corpus_table("point"), config(Policy::Orule, "NOPE")),
               std::invalid_argument);
}

TEST(Tribes, SloppyMarriageBlamed) {
  ClassTable t = corpus_table("tribes_marriage");
  RunResult r = run_program(t, config(Policy::Tribes, "APP"));
  ASSERT_EQ(r.status, RunStatus::Violation);
  EXPECT_EQ(r.violations[0].tag, "monogamy");
  EXPECT_EQ(r.violations[0].blamed, 3);
  bool merged = false;
  for (const auto& line : r.trace) merged = merged || line.rfind("TRIBE merge", 0) == 0;
  EXPECT_TRUE(merged);
}

TEST(Tribes, GoodMarriageClean) {
  RunResult r = run_program(corpus_table("tribes_marriage"), config(Policy::Tribes, "APP", "make_good"));
  EXPECT_EQ(r.status, RunStatus::Completed) << r.error;
}

TEST(Tribes, InjectsMembershipClauses) {
  ClassTable t = corpus_table("tribes_marriage");
  Interpreter in(t, config(Policy::Tribes, "APP"));
  ASSERT_TRUE(in.injected().count("PERSON"));
  EXPECT_FALSE(in.injected().at("PERSON").empty());
  Interpreter plain(t, config(Policy::Orule, "APP"));
  EXPECT_TRUE(plain.injected().empty());
}

TEST(Tribes, HistoryIsMonotone) {
  for (const char* root : {"make", "make_good"}) {
    RunResult r = run_program(corpus_table("tribes_marriage"), config(Policy::Tribes, "APP", root));
    ASSERT_FALSE(r.tribe_history.empty()) << root;
    for (std::size_t k = 1; k < r.tribe_history.size(); ++k) {
      for (const auto& [id, size] : r.tribe_history[k - 1]) {
        auto it = r.tribe_history[k].find(id);
        ASSERT_NE(it, r.tribe_history[k].end()) << root << " step " << k;
        EXPECT_GE(it->second, size) << root << " step " << k << " #" << id;
      }
    }
  }
}

// Random merge sequences against a naive partition.
TEST(TribesProperty, RegistryMatchesNaivePartition) {
  ClassTable t = table_of("class A end");
  for (std::uint32_t seed = 1; seed <= 500; ++seed) {
    Rng rng(seed);
    const int n = rng.uniform(2, 10);
    Heap heap;
    for (int i = 0; i < n; ++i) heap.allocate(t.at("A"));
    TribeRegistry reg;
    std::vector<int> naive(n + 1);
    for (int i = 0; i <= n; ++i) naive[i] = i;
    std::vector<std::size_t> sizes(n + 1, 1);
    for (int step = rng.uniform(0, 15); step > 0; --step) {
      const int a = rng.uniform(1, n), b = rng.uniform(1, n);
      const bool merged = reg.merge(a, b);
      ASSERT_EQ(merged, naive[a] != naive[b]) << "seed " << seed;
      const int from = naive[b], to = naive[a];
      for (auto& x : naive) if (x == from) x = to;
      for (int i = 1; i <= n; ++i) {
        const std::size_t s = reg.size_of(i, heap);
        ASSERT_GE(s, sizes[i]) << "seed " << seed;
        sizes[i] = s;
        for (int j = 1; j <= n; ++j) ASSERT_EQ(reg.same(i, j), naive[i] == naive[j]) << "seed " << seed;
      }
    }
  }
}

}  // namespace
}  // namespace invariantlab
