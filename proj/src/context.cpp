#include "ccic/context.hpp"

namespace ccic {

const Binding* Context::lookup(const std::string& name) const {
  for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it)
    if (it->name == name) return &*it;
  return nullptr;
}

VarLevel Context::level_for_type(const Term& type) {
  return class_of(type) == SyntacticClass::Kind ? VarLevel::Predicate
                                                 : VarLevel::Object;
}

void Context::push(Binding b) {
  if (contains(b.name))
    throw KernelError(ErrorKind::IllFormedTerm,
                      "variable " + b.name + " is declared twice");
  bindings_.push_back(std::move(b));
}

void Context::push(std::string name, Annot annot, Term type) {
  Binding b;
  b.level = level_for_type(type);
  b.name = std::move(name);
  b.annot = annot;
  b.type = std::move(type);
  push(std::move(b));
}

std::string Context::fresh_name(const std::string& base) const {
  std::string stem = (base.empty() || base == "_") ? "x" : base;
  if (!contains(stem)) return stem;
  for (int i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!contains(candidate)) return candidate;
  }
}

Term Context::var(const std::string& name) const {
  const Binding* b = lookup(name);
  if (!b) throw KernelError(ErrorKind::UnboundVariable, name);
  return mk_fvar(name, b->level);
}

}  // namespace ccic
