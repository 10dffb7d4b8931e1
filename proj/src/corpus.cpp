#include <fstream>

#include "invariantlab/report.hpp"

namespace invariantlab {

namespace fs = std::filesystem;

std::vector<Fixture> load_corpus(const fs::path& dir) {
  const fs::path manifest = dir / "manifest.json";
  std::ifstream in(manifest);
  if (!in) throw InputError("no manifest in " + dir.string());
  Json m;
  try {
    m = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(manifest.string() + ": " + e.what());
  }
  if (!m.contains("fixtures") || !m["fixtures"].is_array() || m["fixtures"].empty()) {
    throw InputError(manifest.string() + ": no fixtures");
  }
  std::vector<Fixture> out;
  for (const auto& f : m["fixtures"]) {
    Fixture fx;
    fx.name = f.at("name").get<std::string>();
    fx.source = dir / f.at("source").get<std::string>();
    if (!fs::exists(fx.source)) throw InputError("missing fixture source " + fx.source.string());
    fx.golden = dir / "golden" / (fx.name + ".json");
    if (f.contains("int_range")) {
      auto range = parse_int_range(f["int_range"].get<std::string>());
      if (!range) throw InputError(fx.name + ": bad int_range");
      fx.options.spec.lo = range->first;
      fx.options.spec.hi = range->second;
    }
    if (f.contains("max_objects")) fx.options.spec.max_objects = f["max_objects"].get<int>();
    if (f.contains("max_states")) fx.options.spec.max_states = f["max_states"].get<std::uint64_t>();
    if (f.contains("policy")) {
      auto pol = parse_policy(f["policy"].get<std::string>());
      if (!pol) throw InputError(fx.name + ": bad policy");
      fx.options.policy = *pol;
    }
    if (f.contains("root")) fx.options.root = f["root"].get<std::string>();
    if (f.contains("extra_runs")) {
      for (const auto& e : f["extra_runs"]) {
        ExtraRun run;
        run.root = e.value("root", fx.options.root);
        auto pol = parse_policy(e.value("policy", std::string(to_string(fx.options.policy))));
        if (!pol) throw InputError(fx.name + ": bad policy in extra run");
        run.policy = *pol;
        fx.extra_runs.push_back(std::move(run));
      }
    }
    if (f.contains("note")) fx.note = f["note"].get<std::string>();
    out.push_back(std::move(fx));
  }
  return out;
}

Json fixture_report(const Fixture& fx) {
  const std::vector<fs::path> files{fx.source};
  const std::vector<std::string> names{"corpus/" + fx.source.filename().string()};
  Json out;
  out["fixture"] = fx.name;
  out["note"] = fx.note;
  out["report"] = strip_version(build_report(Command::All, files, names, fx.options));
  out["extra_runs"] = Json::array();
  for (const auto& run : fx.extra_runs) {
    AnalysisOptions o = fx.options;
    o.root = run.root;
    o.policy = run.policy;
    out["extra_runs"].push_back(build_report(Command::Run, files, names, o)["run"]);
  }
  return out;
}

}  // namespace invariantlab
