#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rankforge {

// One leaf of the subcommand tree and the module operations it exercises.
struct CommandInfo {
    std::string group;
    std::string name;
    std::vector<std::string> operations;
};

const std::vector<CommandInfo>& command_table();

// Runs one command line (without the program name). Returns 0 on success,
// 1 on a domain error and 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Directory holding manifest.json: $RANKFORGE_CORPUS if set, else the
// directory compiled in at build time.
std::string corpus_dir();

}  // namespace rankforge
