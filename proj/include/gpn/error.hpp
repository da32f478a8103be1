#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gpn {

enum class Errc {
  invalid_argument,
  unsupported,
  not_representable,
  out_of_range,
  infeasible_multiplicities,
  class_overflow,
  malformed_flag,
  alignment_error,
  corrupt_stream,
  unknown_codeword,
  invalid_chunk,
  bad_magic,
  bad_version,
  truncated_section,
  length_overflow,
  checksum_mismatch,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace gpn
