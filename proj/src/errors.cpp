#include "optthresh/errors.hpp"

namespace optthresh {

namespace {
std::string format_parse_message(const std::string& source, std::size_t row, const std::string& what) {
  std::string msg = source.empty() ? std::string("<input>") : source;
  if (row > 0) {
    msg += ":" + std::to_string(row);
  }
  msg += ": " + what;
  return msg;
}
}  // namespace

ParseError::ParseError(const std::string& source, std::size_t row, const std::string& what)
    : Error(format_parse_message(source, row, what)), row_(row) {}

}  // namespace optthresh
