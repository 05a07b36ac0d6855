#include "subw/format.hpp"

#include <charconv>
#include <system_error>

namespace subw {

std::string fmt_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace subw
