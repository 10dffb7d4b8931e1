// Tree-walking interpreter with contract monitoring and tribe tracking.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "invariantlab/class_table.hpp"

namespace invariantlab {

using ObjectId = std::int64_t;

/// Id of the external caller that starts the program.
inline constexpr ObjectId kExternal = 0;

struct Value {
  enum class Kind { Void, Int, Bool, Ref };

  Kind kind = Kind::Void;
  std::int64_t i = 0;
  bool b = false;
  ObjectId ref = 0;

  static Value void_ref() { return {}; }
  static Value of_int(std::int64_t v) { return {Kind::Int, v, false, 0}; }
  static Value of_bool(bool v) { return {Kind::Bool, 0, v, 0}; }
  static Value of_ref(ObjectId id) { return {Kind::Ref, 0, false, id}; }

  bool is_void() const { return kind == Kind::Void; }
  std::string str() const;

  friend bool operator==(const Value&, const Value&) = default;
};

Value default_value(const TypeRef& t);

struct Object {
  std::string cls;
  std::map<std::string, Value> fields;  // attributes of the flat class
};

class Heap {
 public:
  /// Allocates with default field values; ids start at 1.
  ObjectId allocate(const FlatClass& cls);
  /// Inserts an object under a chosen id (used to inject verifier states).
  void put(ObjectId id, Object obj);

  Object& at(ObjectId id);
  const Object& at(ObjectId id) const;
  bool contains(ObjectId id) const { return objects_.count(id) > 0; }
  const std::map<ObjectId, Object>& objects() const { return objects_; }
  std::size_t size() const { return objects_.size(); }

 private:
  std::map<ObjectId, Object> objects_;
  ObjectId next_ = 1;
};

/// Union-find over object ids. Tribes only grow.
class TribeRegistry {
 public:
  ObjectId find(ObjectId id) const;
  /// Returns true when two distinct tribes were merged.
  bool merge(ObjectId a, ObjectId b);
  bool same(ObjectId a, ObjectId b) const { return find(a) == find(b); }
  /// Members of id's tribe that have been seen by the registry, sorted.
  std::vector<ObjectId> members(ObjectId id, const Heap& heap) const;
  std::size_t size_of(ObjectId id, const Heap& heap) const { return members(id, heap).size(); }

 private:
  mutable std::map<ObjectId, ObjectId> parent_;
};

enum class Policy { Classic, Orule, Tribes };

const char* to_string(Policy p);
std::optional<Policy> parse_policy(const std::string& s);

struct RuntimeConfig {
  Policy policy = Policy::Orule;
  bool monitor = true;
  bool check_pre = true;
  bool check_post = true;
  bool check_invariant = true;
  std::int64_t fuel = 10000;
  /// Nested routine calls beyond this depth exhaust the fuel.
  std::size_t max_depth = 256;
  std::string root_class;
  std::string root_creator;  // empty for default creation
  bool keep_going = false;
  /// When set, integer results outside [lo - slack, hi + slack] are faults.
  std::optional<std::pair<std::int64_t, std::int64_t>> int_bounds;
  std::int64_t int_slack = 16;
};

struct ContractViolation {
  enum class Kind { Precondition, Postcondition, Invariant, CallerPartialInvariant, VoidCall };

  Kind kind = Kind::Invariant;
  std::string phase;  // "before", "after" or "creation" for invariant checks
  std::string tag;    // failing clause label; empty for void calls
  ObjectId blamed = kExternal;
  std::string blamed_class;
  std::string routine;  // routine being called
  SourcePos pos;
  std::vector<std::string> call_stack;
  std::string message;
};

const char* to_string(ContractViolation::Kind k);

/// Execution failure that is not a contract violation.
class RuntimeFault : public std::runtime_error {
 public:
  enum class Kind { VoidCall, Fuel, Overflow, SideEffect, Other };

  RuntimeFault(Kind kind, SourcePos pos, const std::string& message)
      : std::runtime_error(message), kind_(kind), pos_(std::move(pos)) {}
  Kind kind() const { return kind_; }
  const SourcePos& pos() const { return pos_; }

 private:
  Kind kind_;
  SourcePos pos_;
};

const char* to_string(RuntimeFault::Kind k);

/// Activation record of a routine or assertion evaluation.
struct Frame {
  ObjectId current = kExternal;
  const FeatureDecl* routine = nullptr;
  std::map<std::string, Value> locals;
  Value result;
  std::map<const Expr*, Value> olds;
};

class Interpreter {
 public:
  Interpreter(const ClassTable& table, RuntimeConfig config);

  const ClassTable& table() const { return table_; }
  const RuntimeConfig& config() const { return config_; }
  Heap& heap() { return heap_; }
  TribeRegistry& tribes() { return tribes_; }
  const std::vector<std::string>& trace() const { return trace_; }
  const std::vector<ContractViolation>& violations() const { return violations_; }
  /// Tribe size of every object after each CREATE, CALLQ and TRIBE event.
  const std::vector<std::map<ObjectId, std::size_t>>& tribe_history() const { return tribe_history_; }

  /// `create x.make (args)` issued by `caller`; returns the new object.
  ObjectId create(ObjectId caller, const std::string& cls, const std::string& creator,
                  std::vector<Value> args, const SourcePos& pos = {});
  /// Runs creation procedure `creator` on an already allocated object.
  void run_creation(ObjectId caller, ObjectId obj, const std::string& creator,
                    std::vector<Value> args, const SourcePos& pos = {});
  /// Qualified call `target.routine (args)` issued by `caller`.
  Value call(ObjectId caller, ObjectId target, const std::string& routine, std::vector<Value> args,
             const SourcePos& pos = {});
  /// Unqualified call of `routine` with `current` as the current object.
  Value call_unqualified(ObjectId current, const std::string& routine, std::vector<Value> args,
                         const SourcePos& pos = {});

  // Lower-level access for the bounded verifier. These never monitor.
  Frame make_frame(ObjectId current, const FeatureDecl& routine, std::vector<Value> args) const;
  /// Evaluates an assertion in `frame`; mutation of attributes is a fault.
  bool holds(const ExprPtr& e, Frame& frame);
  /// Records values of every `old e` inside `clauses`.
  void snapshot_olds(const std::vector<ExprPtr>& clauses, Frame& frame);
  void exec_body(Frame& frame);

  /// Injected `q /= Void implies tribe_has (Current, q)` clauses per class.
  const std::map<std::string, std::vector<AssertionClause>>& injected() const { return injected_; }

  /// Thrown after the first violation unless keep_going is set.
  struct Halt {};

 private:
  Value eval(const ExprPtr& e, Frame& frame);
  Value eval_binary(const Expr& e, Frame& frame);
  Value invoke(ObjectId caller, Value target, const std::string& routine, std::vector<Value> args,
               const SourcePos& pos, bool qualified);
  void exec(const std::vector<Instr>& instrs, Frame& frame);
  void exec_instr(const Instr& i, Frame& frame);
  Value builtin(const Expr& e, Frame& frame);
  std::int64_t checked(std::int64_t v, bool overflow, const SourcePos& pos) const;
  void burn(const SourcePos& pos);
  /// Records every object's tribe size after a trace event (tribes policy).
  void snapshot_tribes();
  void enter(const SourcePos& pos);

  bool monitoring() const { return config_.monitor && assertion_depth_ == 0; }
  void check_clauses(const char* kind, const std::string& phase,
                     const std::vector<const AssertionClause*>& clauses, Frame& frame,
                     ObjectId blamed, ContractViolation::Kind vkind, const std::string& routine,
                     const SourcePos& pos);
  void check_invariant(ObjectId obj, const std::string& phase, const std::string& routine,
                       const SourcePos& pos);
  void violate(ContractViolation v);
  std::vector<const AssertionClause*> invariant_clauses(const std::string& cls) const;

  const ClassTable& table_;
  RuntimeConfig config_;
  Heap heap_;
  TribeRegistry tribes_;
  std::vector<std::string> trace_;
  std::vector<ContractViolation> violations_;
  std::vector<std::map<ObjectId, std::size_t>> tribe_history_;
  std::vector<std::string> stack_;
  std::map<std::string, std::vector<AssertionClause>> injected_;
  std::map<std::pair<std::string, const FeatureDecl*>, std::vector<const AssertionClause*>>
      partial_cache_;
  std::int64_t fuel_left_;
  int assertion_depth_ = 0;
};

enum class RunStatus { Completed, Violation, FuelExhausted, RuntimeError };

const char* to_string(RunStatus s);

struct RunResult {
  RunStatus status = RunStatus::Completed;
  std::vector<std::string> trace;
  std::vector<ContractViolation> violations;
  std::string error;
  Heap heap;
  std::vector<std::map<ObjectId, std::size_t>> tribe_history;
};

/// Executes `create root.root_creator` from the external caller.
RunResult run_program(const ClassTable& table, const RuntimeConfig& config);

/// Runs `body` against a fresh interpreter and packages the outcome.
RunResult run_with(const ClassTable& table, const RuntimeConfig& config,
                   const std::function<void(Interpreter&)>& body);

}  // namespace invariantlab
