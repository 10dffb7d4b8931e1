// Bounded verification: exhaustive small initial states, concrete execution.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "invariantlab/obligations.hpp"
#include "invariantlab/runtime.hpp"

namespace invariantlab {

struct StateSpec {
  std::int64_t lo = 0;
  std::int64_t hi = 4;
  int max_objects = 3;         // per class
  int min_target_objects = 1;  // the target is always object #1
  std::int64_t fuel = 10000;   // per execution
  std::size_t max_depth = 32;  // nested calls per execution
  std::int64_t int_slack = 16;
  std::uint64_t max_states = 2'000'000;

  /// Empty when valid, otherwise the reason.
  std::string validate() const;
};

/// Parses "lo:hi".
std::optional<std::pair<std::int64_t, std::int64_t>> parse_int_range(const std::string& s);

using HeapState = std::map<ObjectId, Object>;

struct Witness {
  std::string obligation;  // Obligation::id()
  HeapState heap;
  ObjectId target = 1;
  std::vector<Value> args;
  std::string clause;  // label of the failing clause
  std::string side = "post";
};

struct CheckResult {
  enum class Verdict { Verified, Counterexample, Inconclusive };

  Verdict verdict = Verdict::Verified;
  std::optional<Witness> witness;
  std::string reason;  // for Inconclusive
  std::uint64_t states_checked = 0;   // states satisfying the precondition
  std::uint64_t states_estimate = 0;  // size of the enumerated space
};

const char* to_string(CheckResult::Verdict v);

/// Domain of a field or argument of type `t` given the objects in `heap`.
std::vector<Value> value_domain(const TypeRef& t, const HeapState& heap, const StateSpec& spec,
                                const ClassTable& table);

/// Number of (heap, args) combinations enumerate_states would visit.
/// Saturates at UINT64_MAX.
std::uint64_t estimate_states(const std::string& cls, const FeatureDecl* routine,
                              const StateSpec& spec, const ClassTable& table,
                              bool fixed_target = false);

/// Visits every (heap, target, args) up to the bounds in a fixed order. When
/// `fixed_target` holds, the target's fields stay at their defaults. The
/// visitor returns false to stop. Returns the number of states visited.
std::uint64_t enumerate_states(
    const std::string& cls, const FeatureDecl* routine, const StateSpec& spec,
    const ClassTable& table, bool fixed_target,
    const std::function<bool(const HeapState&, ObjectId, const std::vector<Value>&)>& visit);

CheckResult check_obligation(const Obligation& ob, const StateSpec& spec, const ClassTable& table);

nlohmann::ordered_json witness_to_json(const Witness& w);
/// Human-readable driver describing the witness state and the call.
std::string witness_snippet(const Witness& w, const Obligation& ob);

/// Injects the witness heap and performs the call the obligation is about
/// under monitoring.
RunResult replay(const Witness& w, const Obligation& ob, const ClassTable& table, Policy policy,
                 std::int64_t fuel = 10000);

}  // namespace invariantlab
