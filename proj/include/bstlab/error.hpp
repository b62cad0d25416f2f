#pragma once

#include <stdexcept>
#include <string>

namespace bstlab {

// Every failure carries a short machine-readable code ("null-link",
// "nothing-to-cut", ...) next to the human readable message.
class Error : public std::runtime_error {
 public:
  explicit Error(std::string code, const std::string& detail = {})
      : std::runtime_error(detail.empty() ? code : code + ": " + detail),
        code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace bstlab
