#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace symstream {

using Sha512Digest = std::array<std::uint8_t, 64>;

Sha512Digest sha512(std::span<const std::uint8_t> data);

std::string to_hex(std::span<const std::uint8_t> bytes);

} // namespace symstream
