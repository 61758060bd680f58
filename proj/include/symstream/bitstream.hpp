#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace symstream {

/// Immutable bit sequence, one bit per element. Bytes expand
/// most-significant bit first.
class BitStream {
public:
  BitStream() = default;
  explicit BitStream(std::vector<std::uint8_t> bits);

  static BitStream from_bytes(std::span<const std::uint8_t> bytes);
  /// Accepts '0' and '1'; anything else throws std::invalid_argument.
  static BitStream from_string(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }

  /// Packs MSB first; a trailing partial byte is zero-padded.
  std::vector<std::uint8_t> to_bytes() const;

private:
  std::vector<std::uint8_t> bits_;
};

} // namespace symstream
