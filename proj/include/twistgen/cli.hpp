#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Command-line front end: verify theorems, compute image-group orders,
// manage catalogs, evaluate words, and infer seed classes. Exit codes:
// 0 verified/computed, 1 verification failed, 2 usage or configuration
// error. Reports go to stdout (or --out); progress goes to stderr.

namespace twistgen {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

std::string tool_version();
std::string report_schema_version();

}  // namespace twistgen
