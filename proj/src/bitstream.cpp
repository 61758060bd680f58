#include "symstream/bitstream.hpp"

#include <stdexcept>

namespace symstream {

BitStream::BitStream(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_)
    if (b > 1)
      throw std::invalid_argument("BitStream: elements must be 0 or 1");
}

BitStream BitStream::from_bytes(std::span<const std::uint8_t> bytes) {
  BitStream s;
  s.bits_.resize(bytes.size() * 8);
  auto *out = s.bits_.data();
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    const unsigned b = bytes[i];
    for (int k = 0; k < 8; ++k)
      out[8 * i + k] = static_cast<std::uint8_t>((b >> (7 - k)) & 1u);
  }
  return s;
}

BitStream BitStream::from_string(std::string_view text) {
  BitStream s;
  s.bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("BitStream: expected only '0' and '1'");
    s.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return s;
}

std::vector<std::uint8_t> BitStream::to_bytes() const {
  std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    out[i / 8] |= static_cast<std::uint8_t>(bits_[i] << (7 - i % 8));
  return out;
}

} // namespace symstream
