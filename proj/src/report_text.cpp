#include <sstream>

#include "invariantlab/report.hpp"

namespace invariantlab {

namespace {

struct Painter {
  bool color;
  std::string paint(const std::string& s, const char* code) const {
    return color ? std::string("\x1b[") + code + "m" + s + "\x1b[0m" : s;
  }
  std::string status(const std::string& s) const {
    if (s == "ok" || s == "clean" || s == "verified" || s == "completed") return paint(s, "32");
    if (s == "inconclusive") return paint(s, "33");
    return paint(s, "31");
  }
};

std::string str(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render_parse(std::ostream& out, const Json& r, const Painter& p) {
  out << "parse: " << p.status("error") << "\n";
  for (const auto& d : r["parse"]["diagnostics"]) {
    out << "  " << str(d["pos"]) << ": " << str(d["severity"]) << ": " << str(d["message"]) << "\n";
  }
}

void render_check(std::ostream& out, const Json& r, const Painter& p) {
  const Json& h = r["hiding"];
  out << "hiding: " << p.status(str(h["status"])) << "\n";
  for (const auto& d : h["diagnostics"]) {
    out << "  " << str(d["pos"]) << ": " << str(d["caller"]) << " calls " << str(d["callee"])
        << " exported " << str(d["callee_exports"]) << "\n";
  }
  const Json& c = r["consistency"];
  out << "consistency (" << str(c["mode"]) << "): " << p.status(str(c["status"])) << "\n";
  for (const auto& d : c["diagnostics"]) {
    out << "  " << str(d["pos"]) << ": [" << str(d["rule"]) << "] " << str(d["message"]) << "\n";
  }
  const Json& i = r["inhibition"];
  out << "inhibition (external=" << str(i["external"]) << ", internal=" << str(i["internal"])
      << "): " << p.status(str(i["status"])) << "\n";
  for (const auto& x : i["inhibitions"]) {
    out << "  " << str(x["inhibitor"]) << " inhibits " << str(x["inhibited"]) << " through "
        << str(x["tag"]) << "." << str(x["query"]) << "\n";
  }
  for (const auto& d : i["diagnostics"]) {
    out << "  " << str(d["clause"]) << " " << str(d["feature"]) << " (" << str(d["tag"]) << "."
        << str(d["query"]) << "): " << str(d["explanation"]) << "\n";
  }
}

void render_obligations(std::ostream& out, const Json& r) {
  const Json& o = r["obligations"];
  out << "obligations: " << str(o["count"]) << "\n";
  for (const auto& ob : o["list"]) {
    out << "  " << str(ob["id"]) << (ob["recursive"].get<bool>() ? " (recursive)" : "") << "\n";
    for (const char* side : {"pre", "post"}) {
      for (const auto& c : ob[side]) {
        out << "    " << side << " " << str(c["role"]) << ": " << str(c["expr"]) << "\n";
      }
    }
  }
  for (const auto& w : o["warnings"]) out << "  warning: " << str(w) << "\n";
}

void render_verification(std::ostream& out, const Json& r, const Painter& p) {
  const Json& v = r["verification"];
  out << "verification: " << str(v["verified"]) << " verified, " << str(v["counterexamples"])
      << " counterexample(s), " << str(v["inconclusive"]) << " inconclusive\n";
  for (const auto& res : v["results"]) {
    out << "  " << str(res["obligation"]) << ": " << p.status(str(res["verdict"]));
    if (res.contains("reason")) out << " (" << str(res["reason"]) << ")";
    out << "\n";
    if (res.contains("snippet")) {
      std::istringstream lines(str(res["snippet"]));
      for (std::string line; std::getline(lines, line);) out << "    " << line << "\n";
    }
  }
}

void render_run(std::ostream& out, const Json& r, const Painter& p) {
  const Json& run = r["run"];
  out << "run " << str(run["root"]) << " (" << str(run["policy"])
      << "): " << p.status(str(run["status"])) << "\n";
  if (run.contains("error")) out << "  error: " << str(run["error"]) << "\n";
  if (run.contains("warnings")) {
    for (const auto& w : run["warnings"]) out << "  warning: " << str(w) << "\n";
  }
  for (const auto& v : run["violations"]) {
    out << "  " << str(v["pos"]) << ": " << str(v["kind"]);
    if (v.contains("phase")) out << " " << str(v["phase"]);
    out << " '" << str(v["tag"]) << "' in " << str(v["routine"]) << ", blamed "
        << str(v["blamed"]) << " " << str(v["blamed_class"]) << "\n";
  }
  if (run.contains("trace")) {
    for (const auto& line : run["trace"]) out << "  | " << str(line) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& report, bool color) {
  Painter p{color};
  std::ostringstream out;
  if (report.contains("parse")) {
    render_parse(out, report, p);
    return out.str();
  }
  if (report.contains("hiding")) render_check(out, report, p);
  if (report.contains("obligations")) render_obligations(out, report);
  if (report.contains("verification")) render_verification(out, report, p);
  if (report.contains("run")) render_run(out, report, p);
  out << "status: " << p.status(str(report["status"])) << "\n";
  return out.str();
}

}  // namespace invariantlab
