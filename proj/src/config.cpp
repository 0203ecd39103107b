#include "twopoint/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "twopoint/errors.hpp"

namespace twopoint {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    if (trim(text.substr(used)).empty()) return value;
  } catch (const std::exception&) {
  }
  throw DomainError("config key '" + key + "': not a number: '" + text + "'");
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig cfg;
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = trim(line);
    if (body.empty() || body[0] == '#' || body[0] == ';') continue;
    if (body.front() == '[') {
      if (body.back() != ']')
        throw DomainError("config line " + std::to_string(lineno) + ": unterminated section");
      section = trim(body.substr(1, body.size() - 2));
      continue;
    }
    auto eq = body.find('=');
    if (eq == std::string::npos)
      throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (auto hash = value.find(" #"); hash != std::string::npos) value = trim(value.substr(0, hash));
    if (key.empty())
      throw DomainError("config line " + std::to_string(lineno) + ": empty key");
    if (!section.empty() && key.rfind(section + ".", 0) != 0) key = section + "." + key;
    cfg.set(key, value);
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  return parse(in);
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

bool KeyValueConfig::contains(const std::string& key) const { return entries_.count(key) > 0; }

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  auto v = get(key);
  return v ? to_double(key, *v) : fallback;
}

double KeyValueConfig::require_double(const std::string& key) const {
  auto v = get(key);
  if (!v) throw DomainError("config key '" + key + "' is required");
  return to_double(key, *v);
}

long long KeyValueConfig::get_int(const std::string& key, long long fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  long long out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size())
    throw DomainError("config key '" + key + "': not an integer: '" + *v + "'");
  return out;
}

std::vector<std::string> KeyValueConfig::keys() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [k, _] : entries_) out.push_back(k);
  return out;
}

}  // namespace twopoint
