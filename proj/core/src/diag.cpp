#include "mrv/diag.hpp"

namespace mrv {

std::string renderDiag(const std::string& file, const Span& span, const std::string& message) {
  if (!known(span)) {
    return file.empty() ? message : file + ": " + message;
  }
  std::string where = file.empty() ? "<input>" : file;
  return where + ":" + std::to_string(span.line) + ":" + std::to_string(span.col) + ": " + message;
}

}  // namespace mrv
