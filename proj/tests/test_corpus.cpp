#include <sys/wait.h>

#include <cstdlib>
#include <fstream>

#include "invariantlab/report.hpp"
#include "test_support.hpp"

namespace invariantlab {
namespace {

namespace fs = std::filesystem;
using testing::corpus_dir;
using testing::read_text;

const std::vector<Fixture>& corpus() {
  static const std::vector<Fixture> fixtures = load_corpus(corpus_dir());
  return fixtures;
}

const Fixture& fixture(const std::string& name) {
  for (const auto& f : corpus()) {
    if (f.name == name) return f;
  }
  throw std::runtime_error("no fixture " + name);
}

const Json& report_of(const std::string& name) {
  static std::map<std::string, Json> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, fixture_report(fixture(name))).first;
  return it->second;
}

bool updating() {
  const char* env = std::getenv("INVARIANTLAB_UPDATE_GOLDENS");
  return env && std::string(env) == "1";
}

std::string first_difference(const std::string& want, const std::string& got) {
  std::istringstream a(want), b(got);
  std::string la, lb;
  for (int line = 1;; ++line) {
    const bool ra = static_cast<bool>(std::getline(a, la));
    const bool rb = static_cast<bool>(std::getline(b, lb));
    if (!ra && !rb) return "";
    if (!ra || !rb || la != lb) {
      return "line " + std::to_string(line) + "\n  golden: " + (ra ? la : "<eof>") +
             "\n  actual: " + (rb ? lb : "<eof>");
    }
  }
}

TEST(Corpus, ManifestListsEveryFixture) {
  std::set<std::string> names;
  for (const auto& f : corpus()) {
    names.insert(f.name);
    EXPECT_TRUE(fs::exists(f.source)) << f.source;
  }
  for (const char* required : {"point", "observer", "marriage_bad", "marriage_good", "marriage_drink",
                               "spy", "has_point_mischief", "linked_list_dumb",
                               "linked_list_smart_merge", "divorce", "observer_leak",
                               "tribes_marriage"}) {
    EXPECT_TRUE(names.count(required)) << required;
  }
  EXPECT_GE(names.size(), 12u);
}

TEST(Corpus, LoadErrors) {
  const fs::path dir = fs::temp_directory_path() / "invariantlab_empty_corpus";
  fs::remove_all(dir);
  fs::create_directories(dir);
  EXPECT_THROW(load_corpus(dir), InputError);
  std::ofstream(dir / "manifest.json") << R"({"fixtures": []})";
  EXPECT_THROW(load_corpus(dir), InputError);
  std::ofstream(dir / "manifest.json") << R"({"fixtures": [{"name": "x", "source": "x.minio"}]})";
  EXPECT_THROW(load_corpus(dir), InputError);
  fs::remove_all(dir);
}

class Golden : public ::testing::TestWithParam<std::string> {};

TEST_P(Golden, Matches) {
  const Fixture& fx = fixture(GetParam());
  const std::string actual = report_of(fx.name).dump(2) + "\n";
  if (updating()) {
    fs::create_directories(fx.golden.parent_path());
    std::ofstream(fx.golden, std::ios::binary) << actual;
    GTEST_SKIP() << "golden written: " << fx.golden;
  }
  ASSERT_TRUE(fs::exists(fx.golden))
      << fx.golden << " missing; rerun with INVARIANTLAB_UPDATE_GOLDENS=1";
  const std::string golden = read_text(fx.golden);
  EXPECT_TRUE(golden == actual) << fx.name << " drifted at " << first_difference(golden, actual);
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& f : load_corpus(corpus_dir())) out.push_back(f.name);
  return out;
}

INSTANTIATE_TEST_SUITE_P(Corpus, Golden, ::testing::ValuesIn(fixture_names()),
                         [](const auto& info) { return info.param; });

std::vector<Json> results(const Json& report, const std::string& verdict) {
  std::vector<Json> out;
  for (const auto& r : report["verification"]["results"]) {
    if (r["verdict"] == verdict) out.push_back(r);
  }
  return out;
}

bool has_result(const Json& report, const std::string& id, const std::string& verdict) {
  for (const auto& r : results(report, verdict)) {
    if (r["obligation"] == id) return true;
  }
  return false;
}

TEST(CorpusVerdicts, Point) {
  const Json& r = report_of("point")["report"];
  EXPECT_EQ(r["status"], "clean");
  EXPECT_TRUE(results(r, "counterexample").empty());
}

TEST(CorpusVerdicts, MarriageBad) {
  const Json& doc = report_of("marriage_bad");
  const Json& r = doc["report"];
  EXPECT_TRUE(has_result(r, "O:PERSON.set_married", "counterexample"));
  EXPECT_EQ(r["run"]["status"], "violation");
  EXPECT_EQ(r["run"]["violations"][0]["blamed"], "#3");
  EXPECT_EQ(r["run"]["violations"][0]["tag"], "monogamy");
}

TEST(CorpusVerdicts, MarriageGood) {
  const Json& doc = report_of("marriage_good");
  const Json& r = doc["report"];
  EXPECT_TRUE(results(r, "counterexample").empty());
  EXPECT_TRUE(has_result(r, "O:PERSON.set_married", "verified"));
  EXPECT_EQ(r["run"]["status"], "completed");
  for (const auto& run : doc["extra_runs"]) EXPECT_EQ(run["status"], "completed");
}

TEST(CorpusVerdicts, MarriageDrink) {
  const Json& r = report_of("marriage_drink")["report"];
  bool named = false;
  for (const auto& ce : results(r, "counterexample")) {
    named = named || ce["witness"]["clause"] == "is_married implies not is_minor";
  }
  EXPECT_TRUE(named);
}

TEST(CorpusVerdicts, Observer) {
  const Json& doc = report_of("observer");
  const Json& r = doc["report"];
  EXPECT_EQ(r["run"]["status"], "completed");
  EXPECT_TRUE(r["hiding"]["diagnostics"].empty());
  bool subject_x = false;
  for (const auto& d : r["inhibition"]["diagnostics"]) {
    subject_x = subject_x || (d["tag"] == "subject" && d["query"] == "x");
  }
  EXPECT_TRUE(subject_x);
  EXPECT_FALSE(doc["note"].get<std::string>().empty());
}

TEST(CorpusVerdicts, Spy) {
  const Json& r = report_of("spy")["report"];
  ASSERT_EQ(r["hiding"]["diagnostics"].size(), 1u);
  EXPECT_EQ(r["hiding"]["diagnostics"][0]["caller"], "FOE.attempt");
  EXPECT_TRUE(r["consistency"]["diagnostics"].empty());
}

TEST(CorpusVerdicts, LinkedLists) {
  EXPECT_EQ(report_of("linked_list_dumb")["report"]["status"], "clean");
  const Json& merge = report_of("linked_list_smart_merge")["report"];
  EXPECT_EQ(merge["hiding"]["diagnostics"].size(), 5u);
  EXPECT_FALSE(results(merge, "counterexample").empty());
}

TEST(CorpusVerdicts, DivorceAndTribes) {
  const Json& divorce = report_of("divorce");
  EXPECT_EQ(divorce["report"]["run"]["status"], "completed");
  ASSERT_EQ(divorce["extra_runs"].size(), 1u);
  EXPECT_EQ(divorce["extra_runs"][0]["status"], "violation");

  const Json& tribes = report_of("tribes_marriage");
  EXPECT_EQ(tribes["report"]["run"]["status"], "violation");
  EXPECT_EQ(tribes["report"]["run"]["violations"][0]["blamed"], "#3");
  ASSERT_EQ(tribes["extra_runs"].size(), 1u);
  EXPECT_EQ(tribes["extra_runs"][0]["status"], "completed");
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(INVARIANTLAB_CLI) + " " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string corpus_file(const std::string& name) { return (corpus_dir() / (name + ".minio")).string(); }

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("check " + corpus_file("spy") + " --consistency-mode cases"), 1);
  EXPECT_EQ(run_cli("check " + corpus_file("point")), 0);
  EXPECT_EQ(run_cli("verify " + corpus_file("marriage_bad") + " --max-objects 2 --only O:PERSON.set_married"), 1);
  EXPECT_EQ(run_cli("run " + corpus_file("point_driver") + " --policy classic"), 0);
  EXPECT_EQ(run_cli("run " + corpus_file("marriage_bad")), 1);
  EXPECT_EQ(run_cli("verify " + corpus_file("point") + " --int-range 4:1"), 2);
  EXPECT_EQ(run_cli("check /nonexistent/file.minio"), 2);
  EXPECT_EQ(run_cli("check " + corpus_file("point") + " --policy bogus"), 2);
  EXPECT_EQ(run_cli(""), 2);
}

TEST(Cli, ParseErrorsExitTwo) {
  const fs::path bad = fs::temp_directory_path() / "invariantlab_bad.minio";
  std::ofstream(bad) << "class A feature x: end\n";
  EXPECT_EQ(run_cli("check " + bad.string()), 2);
  std::ofstream(bad) << "class A inherit Z end\n";
  EXPECT_EQ(run_cli("check " + bad.string()), 2);
  fs::remove(bad);
}

TEST(Cli, JsonOutputParses) {
  const fs::path out = fs::temp_directory_path() / "invariantlab_out.json";
  const std::string cmd = std::string(INVARIANTLAB_CLI) + " all " + corpus_file("point") +
                          " --format json > " + out.string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  std::ifstream in(out);
  Json r = Json::parse(in);
  EXPECT_EQ(r["tool"], "invariantlab");
  EXPECT_EQ(r["exit_code"], 0);
  fs::remove(out);
}

}  // namespace
}  // namespace invariantlab
