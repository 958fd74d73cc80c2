#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace pclat {

/// Shortest round-trip decimal representation of a double ("0.1", not
/// "0.10000000000000001"). NaN prints as "nan", infinities as "inf"/"-inf".
std::string format_double(double x);

/// FNV-1a 64-bit hash, used for output checksums in run manifests.
std::uint64_t fnv1a64(std::span<const unsigned char> bytes);
std::uint64_t fnv1a64(const std::string& s);

/// Lower-case hex rendering of a 64-bit hash.
std::string hex64(std::uint64_t v);

}  // namespace pclat
