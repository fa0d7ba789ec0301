#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace becgraph::cli {

// Full command-line front end; args excludes the program name. Returns the
// process exit status and writes documents to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace becgraph::cli
