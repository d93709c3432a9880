#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "olam/syntax.hpp"

namespace olam {

class OracleRegistry;

/// Ordered typing context. Persistent: extending shares the prefix.
class Environment {
 public:
  struct Entry {
    Name name;
    std::variant<TypeCon, Kind> classifier;
  };

  /// Throws DuplicateName.
  Environment with_term(Name name, TypeCon type) const;
  /// Throws DuplicateName.
  Environment with_con(Name name, Kind kind) const;

  const TypeCon* term_type(const Name& name) const;
  const Kind* con_kind(const Name& name) const;
  bool contains(const Name& name) const;
  NameSet names() const;
  NameSet term_names() const;
  /// Oldest first.
  std::vector<Entry> entries() const;

 private:
  struct Node {
    Entry entry;
    std::shared_ptr<const Node> next;
  };
  Environment push(Entry e) const;
  const Entry* lookup(const Name& name) const;

  std::shared_ptr<const Node> head_;
};

class TypeChecker {
 public:
  explicit TypeChecker(const OracleRegistry& oracles) : oracles_(&oracles) {}

  /// Errors: IllFormedKind.
  void check_kind(const Environment& env, const Kind& k) const;
  /// Errors: UnboundConVar, KindMismatch, NotAKindFunction.
  Kind infer_kind(const Environment& env, const TypeCon& phi) const;
  /// Checks that phi is a type, i.e. has kind *.
  void check_is_type(const Environment& env, const TypeCon& phi) const;

  /// Constructor-normal type of t. Computation terms are rejected with
  /// ComputationTerm; they are typed by the trace engine.
  TypeCon infer_type(const Environment& env, const Term& t) const;
  /// Errors: TypeMismatch.
  void check_type(const Environment& env, const Term& t, const TypeCon& expected) const;

  const OracleRegistry& oracles() const { return *oracles_; }

 private:
  const OracleRegistry* oracles_;
};

}  // namespace olam
