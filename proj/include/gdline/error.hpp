// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gdline {

enum class Errc {
  UnsupportedM,
  LengthMismatch,
  MalformedFrame,
  DecodeMiss,
  AlreadyKnown,
  InvalidSpec,
  EmptyInput,
  BadMagic,
  TruncatedFile,
  Io,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace gdline
