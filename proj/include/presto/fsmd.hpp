#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "presto/expr.hpp"

namespace presto {

struct Assignment {
  std::string target;
  Expr value;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Assignments of one FSMD step. They all read the store as it was before the
/// step.
using UpdateSet = std::vector<Assignment>;

struct FsmdTransition {
  std::string source;
  std::vector<Expr> guards;  // conjunction; empty means unconditional
  std::string target;
  UpdateSet updates;

  friend bool operator==(const FsmdTransition&, const FsmdTransition&) = default;
};

/// FSMD F = (Q, q0, I_F, V_F, O_F, f, h); f and h are stored together as the
/// transition list.
struct Fsmd {
  std::string name;
  std::vector<std::string> states;
  std::string reset;
  std::set<std::string> inputs;
  std::set<std::string> storage;
  std::set<std::string> outputs;
  std::vector<FsmdTransition> transitions;

  std::set<std::string> variables() const;
  std::vector<std::size_t> outgoing(std::string_view state) const;
  std::set<std::string> terminalStates() const;
  // A cycle reachable from the reset state.
  bool hasReachableCycle() const;

  friend bool operator==(const Fsmd&, const Fsmd&) = default;
};

class FsmdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DuplicateTarget : public FsmdError {
 public:
  explicit DuplicateTarget(const std::string& var)
      : FsmdError("variable '" + var + "' assigned twice in one update set") {}
};

class UnknownVariable : public FsmdError {
 public:
  explicit UnknownVariable(const std::string& var) : FsmdError("unknown variable '" + var + "'") {}
};

class BrokenPath : public FsmdError {
 public:
  using FsmdError::FsmdError;
};

/// Normalized, sorted, duplicate-free guard set; the key of f and h.
std::vector<Expr> guardKey(const std::vector<Expr>& guards);

/// Symbolic value of every variable in terms of the values at path entry.
/// A variable name inside a stored expression denotes that entry value.
using SymbolicStore = std::map<std::string, Expr, std::less<>>;

SymbolicStore freshStore(const Fsmd& m);

SymbolicStore applyUpdateSet(const UpdateSet& updates, const SymbolicStore& store);

using Path = std::vector<std::size_t>;  // transition indices

struct PathEnumeration {
  std::vector<Path> paths;
  // Some path was cut at the bound; `paths` is then partial.
  bool truncated = false;
};

/// Simple paths from `from` into `to`, at most `bound` transitions long, in
/// depth-first order over transition declaration order.
PathEnumeration pathEnumerate(const Fsmd& m, std::string_view from, const std::set<std::string>& to,
                              std::size_t bound);

struct PathTransformation {
  Expr condition;  // over entry values
  SymbolicStore transform;
};

PathTransformation pathTransformation(const Fsmd& m, const Path& path);

enum class FsmdRule {
  DuplicateState,
  MissingReset,
  UnknownState,
  NondeterministicF,
  IllegalTarget,
  DuplicateTarget,
  UnknownVariable,
  GuardSort,
  UpdateSort,
  OutputNotVariable,
};

std::string_view ruleName(FsmdRule rule);

struct FsmdViolation {
  FsmdRule rule;
  std::string element;
  std::string detail;
};

std::vector<FsmdViolation> validateFsmd(const Fsmd& m);

/// Function symbols applied by a transition's updates, sorted. This is the
/// multiset that names a step ("detectEnv", "getKPS, FFT, getPer", ...).
std::vector<std::string> updateLabels(const FsmdTransition& t);

std::string describe(const FsmdTransition& t);

}  // namespace presto
