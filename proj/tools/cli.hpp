#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rsg::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum ExitCode { kOk = 0, kNotFound = 1, kUsage = 2, kInternal = 3 };

// args excludes the program name. Results go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace rsg::cli
