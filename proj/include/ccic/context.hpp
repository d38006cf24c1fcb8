#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccic/term.hpp"

namespace ccic {

struct Binding {
  std::string name;
  Annot annot = Annot::U;
  Term type;
  VarLevel level = VarLevel::Object;
  // Introduced for a binder that neither compared body refers to. Such
  // bindings are omitted from certificate context snapshots.
  bool anonymous = false;
};

// Ordered list of annotated bindings; no name is bound twice.
class Context {
 public:
  Context() = default;

  const std::vector<Binding>& bindings() const { return bindings_; }
  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }
  const Binding& operator[](std::size_t i) const { return bindings_[i]; }

  const Binding* lookup(const std::string& name) const;
  bool contains(const std::string& name) const { return lookup(name) != nullptr; }

  // Level of a variable whose type is `type`: objects have predicate types,
  // predicate variables have kind types.
  static VarLevel level_for_type(const Term& type);

  // Appends a binding. Throws IllFormedTerm if the name is already bound.
  void push(Binding b);
  void push(std::string name, Annot annot, Term type);
  void pop() { bindings_.pop_back(); }
  void truncate(std::size_t n) { bindings_.resize(n); }

  // A name based on `base` that is not bound here.
  std::string fresh_name(const std::string& base) const;

  // Free variable term for binding `name`.
  Term var(const std::string& name) const;

 private:
  std::vector<Binding> bindings_;
};

}  // namespace ccic
