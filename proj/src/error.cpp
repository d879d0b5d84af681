// SPDX-License-Identifier: Apache-2.0
#include "gdline/error.hpp"

namespace gdline {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::UnsupportedM: return "UnsupportedM";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::MalformedFrame: return "MalformedFrame";
    case Errc::DecodeMiss: return "DecodeMiss";
    case Errc::AlreadyKnown: return "AlreadyKnown";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::BadMagic: return "BadMagic";
    case Errc::TruncatedFile: return "TruncatedFile";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace gdline
