#pragma once

// JSON forms of permutations, key files and reports.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "symstream/battery.hpp"
#include "symstream/permutation.hpp"

namespace symstream {

/// Reading or writing a file failed, or its contents are malformed.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Key {
  Permutation x;
  Permutation y;
};

nlohmann::json to_json(const Permutation &p);
/// {"degree": n, "map": [...]}; the degree must match the map length.
Permutation permutation_from_json(const nlohmann::json &j);

nlohmann::json to_json(const Key &k);
Key key_from_json(const nlohmann::json &j);

nlohmann::json to_json(const stats::TestReport &r);

nlohmann::json read_json_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);
std::vector<std::uint8_t> read_binary_file(const std::filesystem::path &path);
void write_binary_file(const std::filesystem::path &path,
                       std::span<const std::uint8_t> bytes);

/// Each byte as eight '0'/'1' characters, MSB first, on one line.
std::string to_ascii_bits(std::span<const std::uint8_t> bytes);

} // namespace symstream
