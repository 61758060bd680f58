#include "symstream/json_io.hpp"

#include <fstream>
#include <iterator>
#include <stdexcept>

namespace symstream {

using nlohmann::json;

json to_json(const Permutation &p) {
  json map = json::array();
  for (auto v : p.map())
    map.push_back(v);
  return {{"degree", p.degree()}, {"map", std::move(map)}};
}

Permutation permutation_from_json(const json &j) {
  try {
    const auto degree = j.at("degree").get<std::size_t>();
    auto map = j.at("map").get<std::vector<std::size_t>>();
    if (map.size() != degree)
      throw IoError("permutation JSON: degree " + std::to_string(degree) +
                    " does not match map length " + std::to_string(map.size()));
    return Permutation(std::span<const std::size_t>(map));
  } catch (const json::exception &e) {
    throw IoError(std::string("permutation JSON: ") + e.what());
  } catch (const std::invalid_argument &e) {
    throw IoError(std::string("permutation JSON: ") + e.what());
  }
}

json to_json(const Key &k) { return {{"x", to_json(k.x)}, {"y", to_json(k.y)}}; }

Key key_from_json(const json &j) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y"))
    throw IoError("key JSON: expected an object with \"x\" and \"y\"");
  Key k{permutation_from_json(j["x"]), permutation_from_json(j["y"])};
  if (k.x.degree() != k.y.degree())
    throw IoError("key JSON: x and y have different degrees");
  return k;
}

json to_json(const stats::TestReport &r) {
  json tests = json::array();
  for (const auto &t : r.tests) {
    json entry = {{"name", t.name},
                  {"params", t.params},
                  {"p_values", t.p_values},
                  {"pass", t.pass}};
    if (!t.failure_reason.empty())
      entry["failure_reason"] = t.failure_reason;
    if (t.advisory)
      entry["advisory"] = "stream shorter than the recommended length";
    tests.push_back(std::move(entry));
  }
  return {{"alpha", r.alpha}, {"tests", std::move(tests)},
          {"overall_pass", r.overall_pass}};
}

json read_json_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size())))
    throw IoError("cannot write " + path.string());
}

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_binary_file(const std::filesystem::path &path,
                       std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out ||
      !out.write(reinterpret_cast<const char *>(bytes.data()),
                 static_cast<std::streamsize>(bytes.size())))
    throw IoError("cannot write " + path.string());
}

std::string to_ascii_bits(std::span<const std::uint8_t> bytes) {
  std::string s(bytes.size() * 8, '0');
  for (std::size_t i = 0; i < bytes.size(); ++i)
    for (int k = 0; k < 8; ++k)
      if ((bytes[i] >> (7 - k)) & 1)
        s[8 * i + k] = '1';
  return s;
}

} // namespace symstream
