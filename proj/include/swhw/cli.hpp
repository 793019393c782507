#pragma once
// Command-line front end. Exit codes: 0 ok, 1 a checked identity failed, 2 bad input.

#include <iosfwd>
#include <string>
#include <vector>

namespace swhw::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// args without the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BoundaryCase {
    std::string kind;  ///< "hw" or "sw"
    long p = 0;
    std::string input;
    std::string formula, direct;
    bool equal() const { return formula == direct; }
};

/// Random tame inputs over Q_p, p in {3, 5, 7}: `cases` of each kind, formula against direct.
std::vector<BoundaryCase> boundary_selftest(unsigned long seed, int cases);

}  // namespace swhw::cli
