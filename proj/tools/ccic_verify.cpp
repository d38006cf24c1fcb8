// Standalone certificate checker: trace replay only, no decision procedures.
#include <CLI11.hpp>

#include "verify_command.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Replay CCIC certificates"};
  std::string path;
  app.add_option("path", path, "certificate file or directory")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  return run_verify(path);
}
