#include "invariantlab/verifier.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

namespace invariantlab {

std::string StateSpec::validate() const {
  if (lo > hi) return "empty integer range";
  if (max_objects < 1) return "max objects must be at least 1";
  if (min_target_objects < 1 || min_target_objects > max_objects) {
    return "target object count out of range";
  }
  if (fuel < 1) return "fuel must be at least 1";
  if (max_depth < 1) return "call depth must be at least 1";
  return {};
}

std::optional<std::pair<std::int64_t, std::int64_t>> parse_int_range(const std::string& s) {
  auto colon = s.find(':', s.empty() ? 0 : 1);
  if (colon == std::string::npos) return std::nullopt;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  auto parse = [](std::string_view t, std::int64_t& out) {
    if (t.empty()) return false;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    return ec == std::errc() && p == t.data() + t.size();
  };
  std::string_view v(s);
  if (!parse(v.substr(0, colon), lo) || !parse(v.substr(colon + 1), hi) || lo > hi) {
    return std::nullopt;
  }
  return std::make_pair(lo, hi);
}

const char* to_string(CheckResult::Verdict v) {
  switch (v) {
    case CheckResult::Verdict::Verified: return "verified";
    case CheckResult::Verdict::Counterexample: return "counterexample";
    case CheckResult::Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<Value> value_domain(const TypeRef& t, const HeapState& heap, const StateSpec& spec,
                                const ClassTable& table) {
  std::vector<Value> out;
  if (t.base == kInteger) {
    for (std::int64_t v = spec.lo; v <= spec.hi; ++v) out.push_back(Value::of_int(v));
    return out;
  }
  if (t.base == kBoolean) return {Value::of_bool(false), Value::of_bool(true)};
  if (t.detachable) out.push_back(Value::void_ref());
  for (const auto& [id, obj] : heap) {
    if (table.is_descendant(obj.cls, t.base)) out.push_back(Value::of_ref(id));
  }
  return out;
}

namespace {

// Classes whose objects may appear: the target class first, then everything
// reachable through attribute and argument types, in declaration order.
std::vector<std::string> involved_classes(const std::string& cls, const FeatureDecl* routine,
                                          const ClassTable& table) {
  std::set<std::string> seen{cls};
  std::vector<std::string> work{cls};
  auto add_type = [&](const TypeRef& t) {
    if (!t.is_reference()) return;
    for (const auto& d : table.descendants(t.base)) {
      if (seen.insert(d).second) work.push_back(d);
    }
  };
  if (routine) {
    for (const auto& f : routine->formals) add_type(f.type);
  }
  while (!work.empty()) {
    std::string c = work.back();
    work.pop_back();
    for (const auto* a : table.at(c).attributes()) add_type(*a->decl->result);
  }
  std::vector<std::string> out{cls};
  for (const auto& n : table.names()) {
    if (n != cls && seen.count(n)) out.push_back(n);
  }
  return out;
}

struct Slot {
  ObjectId obj;  // 0 for arguments
  std::string field;
  std::vector<Value> domain;
};

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return b > std::numeric_limits<std::uint64_t>::max() - a ? std::numeric_limits<std::uint64_t>::max()
                                                            : a + b;
}

class Enumerator {
 public:
  Enumerator(const std::string& cls, const FeatureDecl* routine, const StateSpec& spec,
             const ClassTable& table, bool fixed_target)
      : routine_(routine),
        spec_(spec),
        table_(table),
        fixed_target_(fixed_target),
        classes_(involved_classes(cls, routine, table)) {}

  // Calls fn(heap skeleton, slots) for every count vector.
  template <typename Fn>
  bool for_each_shape(Fn&& fn) const {
    std::vector<int> counts(classes_.size(), 0);
    counts[0] = spec_.min_target_objects;
    while (true) {
      HeapState heap;
      ObjectId next = 1;
      for (std::size_t k = 0; k < classes_.size(); ++k) {
        const FlatClass& c = table_.at(classes_[k]);
        for (int n = 0; n < counts[k]; ++n) {
          Object obj{c.name, {}};
          for (const auto* a : c.attributes()) {
            obj.fields[a->name()] = default_value(*a->decl->result);
          }
          heap.emplace(next++, std::move(obj));
        }
      }
      if (!fn(heap, slots(heap))) return false;
      // Odometer over counts, last class fastest.
      std::size_t k = classes_.size();
      while (k > 0) {
        --k;
        int lo = k == 0 ? spec_.min_target_objects : 0;
        if (counts[k] < spec_.max_objects) {
          ++counts[k];
          break;
        }
        counts[k] = lo;
        if (k == 0) return true;
      }
      if (classes_.empty()) return true;
    }
  }

 private:
  std::vector<Slot> slots(const HeapState& heap) const {
    std::vector<Slot> out;
    for (const auto& [id, obj] : heap) {
      const FlatClass& c = table_.at(obj.cls);
      for (const auto* a : c.attributes()) {
        if (fixed_target_ && id == 1) {
          out.push_back({id, a->name(), {default_value(*a->decl->result)}});
        } else {
          out.push_back({id, a->name(), value_domain(*a->decl->result, heap, spec_, table_)});
        }
      }
    }
    if (routine_) {
      for (const auto& f : routine_->formals) {
        out.push_back({0, f.name, value_domain(f.type, heap, spec_, table_)});
      }
    }
    return out;
  }

  const FeatureDecl* routine_;
  const StateSpec& spec_;
  const ClassTable& table_;
  bool fixed_target_;
  std::vector<std::string> classes_;
};

}  // namespace

std::uint64_t estimate_states(const std::string& cls, const FeatureDecl* routine,
                              const StateSpec& spec, const ClassTable& table, bool fixed_target) {
  std::uint64_t total = 0;
  Enumerator e(cls, routine, spec, table, fixed_target);
  e.for_each_shape([&](const HeapState&, const std::vector<Slot>& slots) {
    std::uint64_t n = 1;
    for (const auto& s : slots) n = sat_mul(n, s.domain.size());
    total = sat_add(total, n);
    return true;
  });
  return total;
}

std::uint64_t enumerate_states(
    const std::string& cls, const FeatureDecl* routine, const StateSpec& spec,
    const ClassTable& table, bool fixed_target,
    const std::function<bool(const HeapState&, ObjectId, const std::vector<Value>&)>& visit) {
  std::uint64_t visited = 0;
  Enumerator e(cls, routine, spec, table, fixed_target);
  e.for_each_shape([&](HeapState heap, const std::vector<Slot>& slots) {
    if (std::any_of(slots.begin(), slots.end(), [](const Slot& s) { return s.domain.empty(); })) {
      return true;
    }
    std::vector<std::size_t> digit(slots.size(), 0);
    std::vector<Value> args;
    while (true) {
      args.clear();
      for (std::size_t k = 0; k < slots.size(); ++k) {
        const Value& v = slots[k].domain[digit[k]];
        if (slots[k].obj == 0) {
          args.push_back(v);
        } else {
          heap.at(slots[k].obj).fields[slots[k].field] = v;
        }
      }
      ++visited;
      if (!visit(heap, 1, args)) return false;
      std::size_t k = slots.size();
      while (k > 0) {
        --k;
        if (++digit[k] < slots[k].domain.size()) break;
        digit[k] = 0;
        if (k == 0) return true;
      }
      if (slots.empty()) return true;
    }
  });
  return visited;
}

namespace {

enum class Outcome { Pass, Skip, Fail, Fault };

struct Attempt {
  Outcome outcome = Outcome::Pass;
  std::string clause;
  std::string fault;
};

Attempt run_once(const Obligation& ob, const StateSpec& spec, const ClassTable& table,
                 const HeapState& heap, ObjectId target, const std::vector<Value>& args) {
  RuntimeConfig cfg;
  cfg.monitor = false;
  cfg.fuel = spec.fuel;
  cfg.max_depth = spec.max_depth;
  cfg.int_bounds = std::make_pair(spec.lo, spec.hi);
  cfg.int_slack = spec.int_slack;
  Interpreter in(table, cfg);
  for (const auto& [id, obj] : heap) in.heap().put(id, obj);

  Frame frame;
  if (ob.decl) {
    frame = in.make_frame(target, *ob.decl, args);
  } else {
    frame.current = target;
  }
  Attempt out;
  try {
    for (const auto& c : ob.pre) {
      if (!in.holds(c.expr, frame)) {
        out.outcome = Outcome::Skip;
        return out;
      }
    }
  } catch (const RuntimeFault&) {
    out.outcome = Outcome::Skip;
    return out;
  }
  try {
    std::vector<ExprPtr> post;
    for (const auto& c : ob.post) post.push_back(c.expr);
    in.snapshot_olds(post, frame);
    if (ob.decl) in.exec_body(frame);
    // Report in the monitor's order: postcondition clauses before invariant.
    std::string first_post;
    std::string first_inv;
    for (const auto& c : ob.post) {
      if (in.holds(c.expr, frame)) continue;
      std::string& slot = c.role == ObligationClause::Role::Invariant ? first_inv : first_post;
      if (slot.empty()) slot = c.tag;
    }
    if (!first_post.empty() || !first_inv.empty()) {
      out.outcome = Outcome::Fail;
      out.clause = first_post.empty() ? first_inv : first_post;
    }
  } catch (const RuntimeFault& f) {
    out.outcome = Outcome::Fault;
    out.fault = std::string(to_string(f.kind())) + ": " + f.what();
  }
  return out;
}

}  // namespace

CheckResult check_obligation(const Obligation& ob, const StateSpec& spec, const ClassTable& table) {
  CheckResult result;
  bool creation = ob.kind == ObligationKind::C;
  result.states_estimate = estimate_states(ob.cls, ob.decl, spec, table, creation);
  if (result.states_estimate > spec.max_states) {
    result.verdict = CheckResult::Verdict::Inconclusive;
    result.reason = "state cap: estimated " + std::to_string(result.states_estimate) +
                    " states exceeds " + std::to_string(spec.max_states);
    return result;
  }
  std::string fault;
  enumerate_states(ob.cls, ob.decl, spec, table, creation,
                   [&](const HeapState& heap, ObjectId target, const std::vector<Value>& args) {
                     Attempt a = run_once(ob, spec, table, heap, target, args);
                     if (a.outcome == Outcome::Skip) return true;
                     ++result.states_checked;
                     if (a.outcome == Outcome::Fault) {
                       fault = a.fault;
                       return false;
                     }
                     if (a.outcome == Outcome::Fail) {
                       result.witness = Witness{ob.id(), heap, target, args, a.clause, "post"};
                       return false;
                     }
                     return true;
                   });
  if (result.witness) {
    result.verdict = CheckResult::Verdict::Counterexample;
  } else if (!fault.empty()) {
    result.verdict = CheckResult::Verdict::Inconclusive;
    result.reason = fault;
  } else if (result.states_checked == 0) {
    result.verdict = CheckResult::Verdict::Inconclusive;
    result.reason = "vacuous: no state within bounds satisfies the precondition";
  } else if (ob.recursive) {
    result.verdict = CheckResult::Verdict::Inconclusive;
    result.reason = "recursion: no counterexample within bounds";
  }
  return result;
}

namespace {

nlohmann::ordered_json value_json(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Void: return nullptr;
    case Value::Kind::Int: return v.i;
    case Value::Kind::Bool: return v.b;
    case Value::Kind::Ref: return nlohmann::ordered_json{{"ref", v.ref}};
  }
  return nullptr;
}

}  // namespace

nlohmann::ordered_json witness_to_json(const Witness& w) {
  nlohmann::ordered_json objects = nlohmann::ordered_json::array();
  for (const auto& [id, obj] : w.heap) {
    nlohmann::ordered_json fields = nlohmann::ordered_json::object();
    for (const auto& [name, v] : obj.fields) fields[name] = value_json(v);
    objects.push_back({{"id", id}, {"class", obj.cls}, {"fields", fields}});
  }
  nlohmann::ordered_json args = nlohmann::ordered_json::array();
  for (const auto& a : w.args) args.push_back(value_json(a));
  return {{"obligation", w.obligation}, {"target", w.target}, {"objects", objects},
          {"args", args},               {"clause", w.clause}, {"side", w.side}};
}

std::string witness_snippet(const Witness& w, const Obligation& ob) {
  std::ostringstream os;
  os << "-- counterexample for " << ob.id() << ", failing clause: " << w.clause << "\n";
  os << "-- initial heap\n";
  for (const auto& [id, obj] : w.heap) {
    os << "--   #" << id << ": " << obj.cls;
    const char* sep = " ";
    for (const auto& [name, v] : obj.fields) {
      os << sep << name << " = " << v.str();
      sep = ", ";
    }
    os << "\n";
  }
  os << "-- call\n--   ";
  if (ob.kind == ObligationKind::C) os << "create ";
  os << "#" << w.target << "." << ob.routine;
  if (!w.args.empty()) {
    os << " (";
    for (std::size_t k = 0; k < w.args.size(); ++k) os << (k ? ", " : "") << w.args[k].str();
    os << ")";
  }
  os << "\n";
  return os.str();
}

RunResult replay(const Witness& w, const Obligation& ob, const ClassTable& table, Policy policy,
                 std::int64_t fuel) {
  RuntimeConfig cfg;
  cfg.policy = policy;
  cfg.fuel = fuel;
  cfg.keep_going = false;
  return run_with(table, cfg, [&](Interpreter& in) {
    for (const auto& [id, obj] : w.heap) in.heap().put(id, obj);
    switch (ob.kind) {
      case ObligationKind::C:
        in.run_creation(kExternal, w.target, ob.decl ? ob.routine : std::string(), w.args);
        break;
      case ObligationKind::N:
        in.call_unqualified(w.target, ob.routine, w.args);
        break;
      case ObligationKind::O:
      case ObligationKind::Oprime:
        in.call(kExternal, w.target, ob.routine, w.args);
        break;
    }
  });
}

}  // namespace invariantlab
