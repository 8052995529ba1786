#pragma once

#include <iosfwd>

namespace liouville::lab {

/// Parses argv into a RunConfig and runs it. Precedence, lowest first:
/// defaults, flags, --config file, LIOUVILLE_LAB_OUT (out_dir only).
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace liouville::lab
