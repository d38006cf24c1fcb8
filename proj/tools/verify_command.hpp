#pragma once

#include <string>

// Verifies one .ccert file or every .ccert file of a directory. Returns the
// process exit code.
int run_verify(const std::string& path);
