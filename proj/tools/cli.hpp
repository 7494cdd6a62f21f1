#pragma once

#include <string>
#include <vector>

namespace infodens {

// full command-line surface, callable in-process for tests; returns the
// process exit code: 0 success, 2 usage, 3 ordering does not hold,
// 4 numeric failure
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

} // namespace infodens
