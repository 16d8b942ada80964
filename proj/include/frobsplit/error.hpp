#ifndef FROBSPLIT_ERROR_HPP
#define FROBSPLIT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace frobsplit {

// All library errors carry a short machine-readable code ("ShapeMismatch",
// "ZeroInverse", ...) next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace frobsplit

#endif
