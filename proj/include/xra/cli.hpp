#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace xra {

// Exit status: 0 ok, 1 negative verdict, 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace xra
