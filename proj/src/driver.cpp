#include "ccic/driver.hpp"

namespace ccic {

namespace {

std::optional<Span> span_of(const SourceFile& f, const TermNode* n) {
  if (!n) return std::nullopt;
  auto it = f.spans.find(n);
  if (it == f.spans.end()) return std::nullopt;
  return it->second;
}

}  // namespace

CheckOutcome check_source(const SourceFile& file, const TyperOptions& opts) {
  CheckOutcome out;
  Context ctx;
  Typer typer(file.signature, opts);
  typer.set_source_map(&file.spans);
  for (const auto& d : file.decls) {
    try {
      switch (d.kind) {
        case Declaration::Kind::Symbol: break;
        case Declaration::Kind::Axiom:
          typer.sort_of_type(ctx, d.type);
          ctx.push(d.name, d.annot, d.type);
          break;
        case Declaration::Kind::Def:
        case Declaration::Kind::Check:
          typer.sort_of_type(ctx, d.type);
          typer.check(ctx, d.term, d.type);
          break;
        case Declaration::Kind::Convert: {
          typer.infer(ctx, d.term);
          typer.infer(ctx, d.other);
          ConversionResult r = convertible(file.signature, ctx, d.term, d.other, opts.conversion);
          if (!r.ok)
            throw KernelError(ErrorKind::TypeMismatch,
                              print(d.term) + " and " + print(d.other) + " are not convertible");
          for (auto& c : r.certificates) out.certificates.push_back(std::move(c));
          break;
        }
      }
    } catch (const KernelError& e) {
      out.ok = false;
      out.kind = e.kind();
      out.message = e.what();
      out.span = span_of(file, e.where());
      if (!out.span) out.span = d.span;
      return out;
    }
    for (auto& c : typer.take_certificates()) out.certificates.push_back(std::move(c));
    ++out.checked;
  }
  return out;
}

std::string describe(const CheckOutcome& o) {
  std::string where = o.span ? o.span->to_string() + ": " : "";
  return where + o.message;
}

}  // namespace ccic
