#pragma once

#include <unordered_map>
#include <vector>

#include "ccic/certificate.hpp"
#include "ccic/context.hpp"
#include "ccic/conversion.hpp"
#include "ccic/signature.hpp"
#include "ccic/syntax.hpp"

namespace ccic {

struct TyperOptions {
  ConversionOptions conversion;
  // Allow strong elimination over word.
  bool word_is_small = false;
};

// Strong elimination (motive into Type) is allowed for small inductives only.
bool check_strong_elim_guard(Inductive ind, Sort motive_sort, bool word_is_small = false);

// Type inference and checking. Errors are KernelErrors whose where() is the
// innermost term under inspection. Certificates of the conversion queries
// accumulate in call order.
class Typer {
 public:
  explicit Typer(const Signature& sig, TyperOptions opts = {});

  Term infer(Context& ctx, const Term& t);
  // t against T; λs are checked by descending into expected Π types.
  void check(Context& ctx, const Term& t, const Term& type);
  // The sort of a type; Extern only when allowed (Type and arities over it).
  Sort sort_of_type(Context& ctx, const Term& type, bool allow_extern = false);

  // Errors then point at the innermost term that has a source span.
  void set_source_map(const SourceMap* spans) { spans_ = spans; }

  const std::vector<Certificate>& certificates() const { return certs_; }
  std::vector<Certificate> take_certificates();

 private:
  Term infer_node(Context& ctx, const Term& t);
  void check_node(Context& ctx, const Term& t, const Term& type);
  Term infer_elim(Context& ctx, const Term& t);
  void require_convertible(Context& ctx, const Term& expected, const Term& actual,
                           const std::string& what);
  Term whnf_type(const Term& t) const;
  // Body of a binder opened with v; remembers where it came from.
  Term open(const Term& body, const Term& v);
  const TermNode* locate() const;

  const Signature& sig_;
  TyperOptions opts_;
  std::vector<Certificate> certs_;
  const SourceMap* spans_ = nullptr;
  std::vector<const TermNode*> stack_;
  std::unordered_map<const TermNode*, Term> origin_;
  std::vector<Term> opened_;  // keeps origin_ keys alive
};

Term infer(const Signature& sig, const Context& ctx, const Term& t, const TyperOptions& opts = {});
// Certificates of a successful check, in order.
std::vector<Certificate> check(const Signature& sig, const Context& ctx, const Term& t,
                               const Term& type, const TyperOptions& opts = {});

}  // namespace ccic
