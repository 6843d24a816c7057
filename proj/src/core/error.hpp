#pragma once

#include <stdexcept>
#include <string>

namespace hypalg {

enum class Errc {
  InvalidParameter,
  UnknownPreset,
  TableExhausted,
  DegenerateTable,
  EigensolverFailure,
  OrderTooSmall,
  WindowTooSmall,
  NotL2,
  OutsideDual,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hypalg
