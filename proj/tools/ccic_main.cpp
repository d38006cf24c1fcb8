#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ccic/driver.hpp"
#include "ccic/reduction.hpp"
#include "verify_command.hpp"

namespace fs = std::filesystem;

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::stringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

// Parses a source file; prints the error and returns false on failure.
bool load(const std::string& path, ccic::SourceFile& file) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << path << ": cannot read file\n";
    return false;
  }
  try {
    file = ccic::parse_file(text);
  } catch (const ccic::KernelError& e) {
    std::cerr << path << ":" << e.what() << "\n";
    return false;
  }
  return true;
}

int write_certificates(const std::string& dir, const std::vector<ccic::Certificate>& certs) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << dir << ": " << ec.message() << "\n";
    return 2;
  }
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".ccert") fs::remove(e.path());
  for (std::size_t i = 0; i < certs.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "%04zu.ccert", i + 1);
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    out << ccic::emit(certs[i]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CCIC proof checker"};
  app.require_subcommand(1);

  std::string file, certs_dir, annot = "r", term_name, verify_path;
  bool plain = false;
  std::uint64_t fuel = 1'000'000;

  auto* check = app.add_subcommand("check", "type check a source file");
  check->add_option("file", file)->required();
  check->add_option("--certs", certs_dir, "directory for NNNN.ccert files");
  check->add_flag("--plain-cic", plain, "pure beta-iota conversion, no theory");
  check->add_option("--fuel", fuel, "reduction step bound");
  check->add_option("--extract-annot", annot, "annotation of extracted equations")
      ->check(CLI::IsMember({"r", "u"}));

  auto* verify = app.add_subcommand("verify", "replay certificates");
  verify->add_option("path", verify_path, "certificate file or directory")->required();

  auto* normal = app.add_subcommand("normalize", "normal form of a definition");
  normal->add_option("file", file)->required();
  normal->add_option("--term", term_name, "definition name")->required();
  normal->add_option("--fuel", fuel, "reduction step bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*verify) return run_verify(verify_path);

  ccic::SourceFile source;
  if (!load(file, source)) return 2;

  if (*normal) {
    for (const auto& d : source.decls) {
      if (d.kind != ccic::Declaration::Kind::Def || d.name != term_name) continue;
      ccic::ReductionOptions ro;
      ro.fuel = fuel;
      try {
        std::cout << ccic::print(ccic::normalize(d.term, ro)) << "\n";
      } catch (const ccic::KernelError& e) {
        std::cerr << file << ":" << d.span.to_string() << ": " << e.what() << "\n";
        return 1;
      }
      return 0;
    }
    std::cerr << file << ": no definition named " << term_name << "\n";
    return 2;
  }

  ccic::TyperOptions opts;
  opts.conversion.theory = !plain;
  opts.conversion.extract_annot = annot == "u" ? ccic::Annot::U : ccic::Annot::R;
  opts.conversion.reduction.fuel = fuel;
  ccic::CheckOutcome out = ccic::check_source(source, opts);
  if (!out.ok) {
    std::cerr << file << ":" << ccic::describe(out) << "\n";
    return 1;
  }
  if (!certs_dir.empty()) {
    if (int rc = write_certificates(certs_dir, out.certificates)) return rc;
  }
  std::cout << file << ": " << out.checked << " declarations checked, "
            << out.certificates.size() << " certificates\n";
  return 0;
}
