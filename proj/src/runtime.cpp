#include "invariantlab/runtime.hpp"

#include <algorithm>

#include "invariantlab/invariant_analysis.hpp"

namespace invariantlab {

std::string Value::str() const {
  switch (kind) {
    case Kind::Void: return "Void";
    case Kind::Int: return std::to_string(i);
    case Kind::Bool: return b ? "True" : "False";
    case Kind::Ref: return "#" + std::to_string(ref);
  }
  return "?";
}

Value default_value(const TypeRef& t) {
  if (t.base == kInteger) return Value::of_int(0);
  if (t.base == kBoolean) return Value::of_bool(false);
  return Value::void_ref();
}

ObjectId Heap::allocate(const FlatClass& cls) {
  Object obj{cls.name, {}};
  for (const auto* a : cls.attributes()) obj.fields[a->name()] = default_value(*a->decl->result);
  ObjectId id = next_;
  put(id, std::move(obj));
  return id;
}

void Heap::put(ObjectId id, Object obj) {
  objects_[id] = std::move(obj);
  next_ = std::max(next_, id + 1);
}

Object& Heap::at(ObjectId id) {
  auto it = objects_.find(id);
  if (it == objects_.end()) throw std::out_of_range("no object #" + std::to_string(id));
  return it->second;
}

const Object& Heap::at(ObjectId id) const {
  auto it = objects_.find(id);
  if (it == objects_.end()) throw std::out_of_range("no object #" + std::to_string(id));
  return it->second;
}

ObjectId TribeRegistry::find(ObjectId id) const {
  auto it = parent_.find(id);
  if (it == parent_.end() || it->second == id) return id;
  ObjectId root = find(it->second);
  it->second = root;
  return root;
}

bool TribeRegistry::merge(ObjectId a, ObjectId b) {
  ObjectId ra = find(a);
  ObjectId rb = find(b);
  if (ra == rb) return false;
  // Smaller id becomes the representative, for stable output.
  if (rb < ra) std::swap(ra, rb);
  parent_[rb] = ra;
  parent_.try_emplace(ra, ra);
  return true;
}

std::vector<ObjectId> TribeRegistry::members(ObjectId id, const Heap& heap) const {
  std::vector<ObjectId> out;
  ObjectId root = find(id);
  for (const auto& [oid, obj] : heap.objects()) {
    (void)obj;
    if (find(oid) == root) out.push_back(oid);
  }
  return out;
}

const char* to_string(Policy p) {
  switch (p) {
    case Policy::Classic: return "classic";
    case Policy::Orule: return "orule";
    case Policy::Tribes: return "tribes";
  }
  return "?";
}

std::optional<Policy> parse_policy(const std::string& s) {
  if (s == "classic") return Policy::Classic;
  if (s == "orule") return Policy::Orule;
  if (s == "tribes") return Policy::Tribes;
  return std::nullopt;
}

const char* to_string(ContractViolation::Kind k) {
  switch (k) {
    case ContractViolation::Kind::Precondition: return "precondition";
    case ContractViolation::Kind::Postcondition: return "postcondition";
    case ContractViolation::Kind::Invariant: return "invariant";
    case ContractViolation::Kind::CallerPartialInvariant: return "caller-partial-invariant";
    case ContractViolation::Kind::VoidCall: return "void-call";
  }
  return "?";
}

const char* to_string(RuntimeFault::Kind k) {
  switch (k) {
    case RuntimeFault::Kind::VoidCall: return "void-call";
    case RuntimeFault::Kind::Fuel: return "fuel";
    case RuntimeFault::Kind::Overflow: return "overflow";
    case RuntimeFault::Kind::SideEffect: return "side-effect";
    case RuntimeFault::Kind::Other: return "runtime-error";
  }
  return "?";
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Completed: return "completed";
    case RunStatus::Violation: return "violation";
    case RunStatus::FuelExhausted: return "fuel-exhausted";
    case RunStatus::RuntimeError: return "runtime-error";
  }
  return "?";
}

namespace {

// `q /= Void implies tribe_has (Current, q)`, type-annotated.
AssertionClause tribe_clause(const std::string& cls, const std::string& q, const TypeRef& qt) {
  const TypeRef boolean{kBoolean, false};
  auto name = [&] {
    ExprPtr e = make_name(q);
    e->binding = Binding::Attribute;
    e->type = qt;
    return e;
  };
  ExprPtr v = make_void();
  v->type = {kVoidType, true};
  ExprPtr guard = make_binary(Op::Ne, name(), v);
  guard->type = boolean;
  ExprPtr cur = make_current();
  cur->type = {cls, false};
  ExprPtr has = make_call(kTribeHas, {cur, name()});
  has->binding = Binding::Builtin;
  has->type = boolean;
  ExprPtr imp = make_binary(Op::Implies, guard, has);
  imp->type = boolean;
  return {"tribe_" + q, imp};
}

class DepthGuard {
 public:
  explicit DepthGuard(int& depth) : depth_(depth) { ++depth_; }
  ~DepthGuard() { --depth_; }
  DepthGuard(const DepthGuard&) = delete;
  DepthGuard& operator=(const DepthGuard&) = delete;

 private:
  int& depth_;
};

class StackGuard {
 public:
  StackGuard(std::vector<std::string>& stack, std::string frame) : stack_(stack) {
    stack_.push_back(std::move(frame));
  }
  ~StackGuard() { stack_.pop_back(); }
  StackGuard(const StackGuard&) = delete;
  StackGuard& operator=(const StackGuard&) = delete;

 private:
  std::vector<std::string>& stack_;
};

std::vector<const AssertionClause*> pointers(const std::vector<AssertionClause>& clauses) {
  std::vector<const AssertionClause*> out;
  for (const auto& c : clauses) out.push_back(&c);
  return out;
}

}  // namespace

Interpreter::Interpreter(const ClassTable& table, RuntimeConfig config)
    : table_(table), config_(std::move(config)), fuel_left_(config_.fuel) {
  if (config_.policy != Policy::Tribes) return;
  for (const auto& i : extract_inhibitions(table_)) {
    auto& clauses = injected_[i.inhibited];
    std::string tag = "tribe_" + i.tag;
    bool dup = std::any_of(clauses.begin(), clauses.end(),
                           [&](const AssertionClause& c) { return *c.tag == tag; });
    if (dup) continue;
    const FlatFeature* q = table_.at(i.inhibited).find(i.tag);
    clauses.push_back(tribe_clause(i.inhibited, i.tag, *q->decl->result));
    trace_.push_back("INJECT " + i.inhibited + " " + i.tag);
  }
}

std::vector<const AssertionClause*> Interpreter::invariant_clauses(const std::string& cls) const {
  std::vector<const AssertionClause*> out;
  for (const auto& c : table_.at(cls).invariant) out.push_back(c.clause);
  if (config_.policy == Policy::Tribes) {
    auto ancestors = table_.ancestors(cls);
    for (auto it = ancestors.rbegin(); it != ancestors.rend(); ++it) {
      auto found = injected_.find(*it);
      if (found == injected_.end()) continue;
      for (const auto& c : found->second) out.push_back(&c);
    }
  }
  return out;
}

void Interpreter::burn(const SourcePos& pos) {
  if (--fuel_left_ < 0) throw RuntimeFault(RuntimeFault::Kind::Fuel, pos, "fuel exhausted");
}

void Interpreter::enter(const SourcePos& pos) {
  burn(pos);
  if (stack_.size() >= config_.max_depth) {
    throw RuntimeFault(RuntimeFault::Kind::Fuel, pos, "call depth limit exceeded");
  }
}

std::int64_t Interpreter::checked(std::int64_t v, bool overflow, const SourcePos& pos) const {
  if (!overflow && config_.int_bounds) {
    auto [lo, hi] = *config_.int_bounds;
    overflow = v < lo - config_.int_slack || v > hi + config_.int_slack;
  }
  if (overflow) {
    throw RuntimeFault(RuntimeFault::Kind::Overflow, pos, "integer out of range at " + pos.str());
  }
  return v;
}

void Interpreter::violate(ContractViolation v) {
  v.call_stack = stack_;
  violations_.push_back(std::move(v));
  if (!config_.keep_going) throw Halt{};
}

void Interpreter::check_clauses(const char* kind, const std::string& phase,
                                const std::vector<const AssertionClause*>& clauses, Frame& frame,
                                ObjectId blamed, ContractViolation::Kind vkind,
                                const std::string& routine, const SourcePos& pos) {
  if (clauses.empty()) {
    trace_.push_back(std::string("CHECK ") + kind + " <none> ok");
    return;
  }
  for (const auto* c : clauses) {
    bool ok = holds(c->expr, frame);
    trace_.push_back(std::string("CHECK ") + kind + " " + c->label() + (ok ? " ok" : " FAIL"));
    if (ok) continue;
    ContractViolation v;
    v.kind = vkind;
    v.phase = phase;
    v.tag = c->label();
    v.blamed = blamed;
    v.blamed_class = blamed == kExternal ? std::string() : heap_.at(blamed).cls;
    v.routine = routine;
    v.pos = pos;
    v.message = std::string(to_string(vkind)) + (phase.empty() ? "" : " (" + phase + ")") +
                " clause '" + v.tag + "' violated";
    if (blamed != kExternal) v.message += " by #" + std::to_string(blamed) + ":" + v.blamed_class;
    if (!routine.empty()) v.message += " at call to " + routine;
    violate(std::move(v));
  }
}

void Interpreter::check_invariant(ObjectId obj, const std::string& phase,
                                  const std::string& routine, const SourcePos& pos) {
  std::vector<ObjectId> members{obj};
  if (config_.policy == Policy::Tribes) {
    for (ObjectId m : tribes_.members(obj, heap_)) {
      if (m != obj) members.push_back(m);
    }
  }
  const char* kind = phase == "before" ? "invariant-before" : "invariant";
  for (ObjectId m : members) {
    Frame frame;
    frame.current = m;
    check_clauses(kind, phase, invariant_clauses(heap_.at(m).cls), frame, m,
                  ContractViolation::Kind::Invariant, routine, pos);
  }
}

Frame Interpreter::make_frame(ObjectId current, const FeatureDecl& routine,
                              std::vector<Value> args) const {
  Frame frame;
  frame.current = current;
  frame.routine = &routine;
  for (std::size_t k = 0; k < routine.formals.size() && k < args.size(); ++k) {
    frame.locals[routine.formals[k].name] = args[k];
  }
  if (routine.result) frame.result = default_value(*routine.result);
  return frame;
}

bool Interpreter::holds(const ExprPtr& e, Frame& frame) {
  DepthGuard guard(assertion_depth_);
  return eval(e, frame).b;
}

void Interpreter::snapshot_olds(const std::vector<ExprPtr>& clauses, Frame& frame) {
  DepthGuard guard(assertion_depth_);
  for (const auto& c : clauses) {
    walk(c, [&](const Expr& e) {
      if (e.kind == Expr::Kind::Old && !frame.olds.count(&e)) frame.olds[&e] = eval(e.lhs, frame);
    });
  }
}

void Interpreter::exec_body(Frame& frame) { exec(frame.routine->body, frame); }

ObjectId Interpreter::create(ObjectId caller, const std::string& cls, const std::string& creator,
                             std::vector<Value> args, const SourcePos& pos) {
  if (assertion_depth_ > 0) {
    throw RuntimeFault(RuntimeFault::Kind::SideEffect, pos, "creation during assertion evaluation");
  }
  ObjectId id = heap_.allocate(table_.at(cls));
  trace_.push_back("CREATE " + std::to_string(id) + ":" + cls);
  snapshot_tribes();
  run_creation(caller, id, creator, std::move(args), pos);
  return id;
}

void Interpreter::run_creation(ObjectId caller, ObjectId obj, const std::string& creator,
                               std::vector<Value> args, const SourcePos& pos) {
  enter(pos);
  const FlatClass& cls = table_.at(heap_.at(obj).cls);
  bool mon = monitoring();
  if (!creator.empty()) {
    const FlatFeature* f = cls.find(creator);
    if (!f || !f->decl->is_routine()) {
      throw RuntimeFault(RuntimeFault::Kind::Other, pos, "no creation procedure " + creator);
    }
    Frame frame = make_frame(obj, *f->decl, std::move(args));
    StackGuard sg(stack_, cls.name + "." + creator + "#" + std::to_string(obj));
    if (mon && config_.check_pre) {
      check_clauses("precondition", "", pointers(f->decl->require), frame, caller,
                    ContractViolation::Kind::Precondition, creator, pos);
    }
    std::vector<ExprPtr> post;
    for (const auto& c : f->decl->ensure) post.push_back(c.expr);
    snapshot_olds(post, frame);
    exec_body(frame);
    if (mon && config_.check_post) {
      check_clauses("postcondition", "", pointers(f->decl->ensure), frame, obj,
                    ContractViolation::Kind::Postcondition, creator, pos);
    }
  }
  if (mon && config_.check_invariant) {
    check_invariant(obj, "creation", creator.empty() ? "default_create" : creator, pos);
  }
}

Value Interpreter::call(ObjectId caller, ObjectId target, const std::string& routine,
                        std::vector<Value> args, const SourcePos& pos) {
  return invoke(caller, Value::of_ref(target), routine, std::move(args), pos, true);
}

Value Interpreter::call_unqualified(ObjectId current, const std::string& routine,
                                    std::vector<Value> args, const SourcePos& pos) {
  return invoke(current, Value::of_ref(current), routine, std::move(args), pos, false);
}

Value Interpreter::invoke(ObjectId caller, Value target, const std::string& routine,
                          std::vector<Value> args, const SourcePos& pos, bool qualified) {
  enter(pos);
  ObjectId id = target.ref;
  const FlatClass& cls = table_.at(heap_.at(id).cls);
  const FlatFeature* f = cls.find(routine);
  if (!f || !f->decl->is_routine()) {
    throw RuntimeFault(RuntimeFault::Kind::Other, pos, cls.name + " has no routine " + routine);
  }
  Frame frame = make_frame(id, *f->decl, std::move(args));
  bool mon = monitoring();
  if (mon && qualified) {
    trace_.push_back("CALLQ " + std::to_string(caller) + "->" + std::to_string(id) + "." + routine);
    snapshot_tribes();
  }
  StackGuard sg(stack_, cls.name + "." + routine + "#" + std::to_string(id));

  if (mon && config_.check_pre) {
    check_clauses("precondition", "", pointers(f->decl->require), frame, qualified ? caller : id,
                  ContractViolation::Kind::Precondition, routine, pos);
  }
  if (mon && qualified && config_.check_invariant) {
    if (config_.policy == Policy::Classic) {
      check_invariant(id, "before", routine, pos);
    } else if (caller != kExternal) {
      const std::string& caller_cls = heap_.at(caller).cls;
      auto key = std::make_pair(caller_cls, f->decl);
      auto it = partial_cache_.find(key);
      if (it == partial_cache_.end()) {
        std::vector<const AssertionClause*> clauses;
        for (const auto& c : partial_invariant(caller_cls, f->exports(), table_).clauses) {
          clauses.push_back(c.clause);
        }
        it = partial_cache_.emplace(key, std::move(clauses)).first;
      }
      Frame caller_frame;
      caller_frame.current = caller;
      check_clauses("caller-partial-invariant", "", it->second, caller_frame, caller,
                    ContractViolation::Kind::CallerPartialInvariant, routine, pos);
    }
  }

  std::vector<ExprPtr> post;
  for (const auto& c : f->decl->ensure) post.push_back(c.expr);
  snapshot_olds(post, frame);
  exec_body(frame);

  if (mon && config_.check_post) {
    check_clauses("postcondition", "", pointers(f->decl->ensure), frame, id,
                  ContractViolation::Kind::Postcondition, routine, pos);
  }
  if (mon && qualified && config_.check_invariant) check_invariant(id, "after", routine, pos);
  return frame.result;
}

Value Interpreter::builtin(const Expr& e, Frame& frame) {
  std::vector<Value> args;
  if (e.args.size() == 1) args.push_back(Value::of_ref(frame.current));
  for (const auto& a : e.args) args.push_back(eval(a, frame));
  const Value& a = args[0];
  const Value& b = args[1];
  if (e.name == kTribeHas) {
    if (a.is_void() || b.is_void()) return Value::of_bool(false);
    if (config_.policy != Policy::Tribes) return Value::of_bool(a.ref == b.ref);
    return Value::of_bool(tribes_.same(a.ref, b.ref));
  }
  if (config_.policy != Policy::Tribes || a.is_void() || b.is_void()) return {};
  if (tribes_.merge(a.ref, b.ref)) {
    trace_.push_back("TRIBE merge " + std::to_string(a.ref) + " " + std::to_string(b.ref));
    snapshot_tribes();
  }
  return {};
}

void Interpreter::snapshot_tribes() {
  if (config_.policy != Policy::Tribes) return;
  std::map<ObjectId, std::size_t> sizes;
  for (const auto& entry : heap_.objects()) sizes[entry.first] = tribes_.size_of(entry.first, heap_);
  tribe_history_.push_back(std::move(sizes));
}

Value Interpreter::eval_binary(const Expr& e, Frame& frame) {
  switch (e.op) {
    case Op::And: {
      if (!eval(e.lhs, frame).b) return Value::of_bool(false);
      return Value::of_bool(eval(e.rhs, frame).b);
    }
    case Op::Or: {
      if (eval(e.lhs, frame).b) return Value::of_bool(true);
      return Value::of_bool(eval(e.rhs, frame).b);
    }
    case Op::Implies: {
      if (!eval(e.lhs, frame).b) return Value::of_bool(true);
      return Value::of_bool(eval(e.rhs, frame).b);
    }
    default:
      break;
  }
  Value l = eval(e.lhs, frame);
  Value r = eval(e.rhs, frame);
  std::int64_t out = 0;
  switch (e.op) {
    case Op::Add: {
      bool o = __builtin_add_overflow(l.i, r.i, &out);
      return Value::of_int(checked(out, o, e.pos));
    }
    case Op::Sub: {
      bool o = __builtin_sub_overflow(l.i, r.i, &out);
      return Value::of_int(checked(out, o, e.pos));
    }
    case Op::Eq: return Value::of_bool(l == r);
    case Op::Ne: return Value::of_bool(!(l == r));
    case Op::Lt: return Value::of_bool(l.i < r.i);
    case Op::Le: return Value::of_bool(l.i <= r.i);
    case Op::Gt: return Value::of_bool(l.i > r.i);
    case Op::Ge: return Value::of_bool(l.i >= r.i);
    default: break;
  }
  throw RuntimeFault(RuntimeFault::Kind::Other, e.pos, "bad binary operator");
}

Value Interpreter::eval(const ExprPtr& ep, Frame& frame) {
  const Expr& e = *ep;
  switch (e.kind) {
    case Expr::Kind::IntLit: return Value::of_int(e.int_value);
    case Expr::Kind::BoolLit: return Value::of_bool(e.bool_value);
    case Expr::Kind::VoidLit: return Value::void_ref();
    case Expr::Kind::Current: return Value::of_ref(frame.current);
    case Expr::Kind::Result: return frame.result;
    case Expr::Kind::Old: {
      auto it = frame.olds.find(&e);
      return it != frame.olds.end() ? it->second : eval(e.lhs, frame);
    }
    case Expr::Kind::Name:
    case Expr::Kind::Call: {
      switch (e.binding) {
        case Binding::Local: return frame.locals.at(e.name);
        case Binding::Attribute: return heap_.at(frame.current).fields.at(e.name);
        case Binding::Constant: {
          const FlatFeature* f = table_.at(heap_.at(frame.current).cls).find(e.name);
          return f->decl->result->base == kBoolean ? Value::of_bool(f->decl->constant_value != 0)
                                                   : Value::of_int(f->decl->constant_value);
        }
        case Binding::Builtin: return builtin(e, frame);
        case Binding::Routine: {
          std::vector<Value> args;
          for (const auto& a : e.args) args.push_back(eval(a, frame));
          return invoke(frame.current, Value::of_ref(frame.current), e.name, std::move(args), e.pos,
                        false);
        }
        case Binding::Unresolved: break;
      }
      throw RuntimeFault(RuntimeFault::Kind::Other, e.pos, "unresolved name " + e.name);
    }
    case Expr::Kind::Qualified: {
      Value target = eval(e.lhs, frame);
      if (target.is_void()) {
        std::string what = "call to " + e.name + " on Void target at " + e.pos.str();
        if (!monitoring()) throw RuntimeFault(RuntimeFault::Kind::VoidCall, e.pos, what);
        ContractViolation v;
        v.kind = ContractViolation::Kind::VoidCall;
        v.blamed = frame.current;
        v.blamed_class = frame.current == kExternal ? "" : heap_.at(frame.current).cls;
        v.routine = e.name;
        v.pos = e.pos;
        v.message = what;
        trace_.push_back("CHECK void-call " + e.name + " FAIL");
        violate(std::move(v));
        return e.type.base.empty() ? Value{} : default_value(e.type);
      }
      const Object& obj = heap_.at(target.ref);
      const FlatFeature* f = table_.at(obj.cls).find(e.name);
      if (f->decl->kind == FeatureDecl::Kind::Attribute) return obj.fields.at(e.name);
      if (f->decl->kind == FeatureDecl::Kind::Constant) {
        return f->decl->result->base == kBoolean ? Value::of_bool(f->decl->constant_value != 0)
                                                 : Value::of_int(f->decl->constant_value);
      }
      std::vector<Value> args;
      for (const auto& a : e.args) args.push_back(eval(a, frame));
      return invoke(frame.current, target, e.name, std::move(args), e.pos, true);
    }
    case Expr::Kind::Unary: {
      Value v = eval(e.lhs, frame);
      if (e.op == Op::Not) return Value::of_bool(!v.b);
      std::int64_t out = 0;
      bool o = __builtin_sub_overflow(std::int64_t{0}, v.i, &out);
      return Value::of_int(checked(out, o, e.pos));
    }
    case Expr::Kind::Binary:
      return eval_binary(e, frame);
  }
  throw RuntimeFault(RuntimeFault::Kind::Other, e.pos, "bad expression");
}

void Interpreter::exec(const std::vector<Instr>& instrs, Frame& frame) {
  for (const auto& i : instrs) exec_instr(i, frame);
}

void Interpreter::exec_instr(const Instr& i, Frame& frame) {
  burn(i.pos);
  auto store = [&](const Value& v) {
    if (i.target == "Result") {
      frame.result = v;
      return;
    }
    if (assertion_depth_ > 0) {
      throw RuntimeFault(RuntimeFault::Kind::SideEffect, i.pos,
                         "assignment to " + i.target + " during assertion evaluation");
    }
    heap_.at(frame.current).fields.at(i.target) = v;
  };
  switch (i.kind) {
    case Instr::Kind::Assign:
      store(eval(i.expr, frame));
      return;
    case Instr::Kind::Call:
      eval(i.expr, frame);
      return;
    case Instr::Kind::Create: {
      const TypeRef* t = nullptr;
      if (i.target == "Result") {
        t = &*frame.routine->result;
      } else {
        t = &*table_.at(heap_.at(frame.current).cls).find(i.target)->decl->result;
      }
      std::vector<Value> args;
      for (const auto& a : i.args) args.push_back(eval(a, frame));
      ObjectId id = create(frame.current, t->base, i.creator, std::move(args), i.pos);
      store(Value::of_ref(id));
      return;
    }
    case Instr::Kind::If:
      exec(eval(i.expr, frame).b ? i.then_branch : i.else_branch, frame);
      return;
    case Instr::Kind::Loop:
      exec(i.init, frame);
      while (!eval(i.expr, frame).b) {
        burn(i.pos);
        exec(i.body, frame);
      }
      return;
  }
}

RunResult run_with(const ClassTable& table, const RuntimeConfig& config,
                   const std::function<void(Interpreter&)>& body) {
  Interpreter in(table, config);
  RunResult r;
  try {
    body(in);
  } catch (const Interpreter::Halt&) {
  } catch (const RuntimeFault& f) {
    r.status = f.kind() == RuntimeFault::Kind::Fuel ? RunStatus::FuelExhausted
                                                     : RunStatus::RuntimeError;
    r.error = std::string(to_string(f.kind())) + ": " + f.what();
  }
  if (r.status == RunStatus::Completed && !in.violations().empty()) r.status = RunStatus::Violation;
  r.trace = in.trace();
  r.violations = in.violations();
  r.heap = in.heap();
  r.tribe_history = in.tribe_history();
  return r;
}

RunResult run_program(const ClassTable& table, const RuntimeConfig& config) {
  const FlatClass* root = table.find(config.root_class);
  if (!root) throw std::invalid_argument("unknown root class " + config.root_class);
  if (!config.root_creator.empty()) {
    const FlatFeature* f = root->find(config.root_creator);
    if (!f || !f->decl->is_routine() || f->decl->result) {
      throw std::invalid_argument(config.root_class + "." + config.root_creator +
                                  " is not a procedure");
    }
    if (!f->decl->formals.empty()) {
      throw std::invalid_argument("root procedure " + config.root_creator + " takes arguments");
    }
  }
  return run_with(table, config, [&](Interpreter& in) {
    in.create(kExternal, config.root_class, config.root_creator, {});
  });
}

}  // namespace invariantlab
