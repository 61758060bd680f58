#include "symstream/sha512.hpp"

#include <stdexcept>

#include <openssl/evp.h>

namespace symstream {

Sha512Digest sha512(std::span<const std::uint8_t> data) {
  Sha512Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha512(),
                 nullptr) != 1 ||
      len != out.size())
    throw std::runtime_error("SHA-512 digest failed");
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xF]);
  }
  return s;
}

} // namespace symstream
