#pragma once

#include <string>

namespace subw {

// Shortest round-trip decimal form of a double (std::to_chars), locale
// independent: '.' decimal point always, no grouping. All CSV/JSON output
// goes through this so files are byte-stable across environments.
std::string fmt_double(double v);

}  // namespace subw
