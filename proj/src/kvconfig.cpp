#include "nomapair/kvconfig.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nomapair/errors.hpp"

namespace nomapair {

namespace {

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

KvMap parse_kv_text(const std::string& text, const std::string& origin) {
  KvMap kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected 'key = value', got '" + t + "'");
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    }
    kv[key] = value;
  }
  return kv;
}

KvMap parse_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_kv_text(buf.str(), path);
}

bool kv_has(const KvMap& kv, const std::string& key) { return kv.count(key) != 0; }

std::string require_string(const KvMap& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw ConfigError("missing required config key '" + key + "'");
  return it->second;
}

double parse_double_value(const std::string& text, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
    throw ConfigError("config key '" + key + "': not a number: '" + text + "'");
  }
  return v;
}

long long parse_int_value(const std::string& text, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
    throw ConfigError("config key '" + key + "': not an integer: '" + text + "'");
  }
  return v;
}

double require_double(const KvMap& kv, const std::string& key) {
  return parse_double_value(require_string(kv, key), key);
}

long long require_int(const KvMap& kv, const std::string& key) {
  return parse_int_value(require_string(kv, key), key);
}

std::string get_string(const KvMap& kv, const std::string& key, const std::string& fallback) {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

double get_double(const KvMap& kv, const std::string& key, double fallback) {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : parse_double_value(it->second, key);
}

long long get_int(const KvMap& kv, const std::string& key, long long fallback) {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : parse_int_value(it->second, key);
}

std::uint64_t get_u64(const KvMap& kv, const std::string& key, std::uint64_t fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  errno = 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(it->second.c_str(), &end, 10);
  if (end == it->second.c_str() || *end != '\0' || errno == ERANGE) {
    throw ConfigError("config key '" + key + "': not an unsigned integer: '" + it->second + "'");
  }
  return v;
}

std::vector<std::string> parse_string_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const char* ws = " \t\r\n";
    auto b = item.find_first_not_of(ws);
    if (b == std::string::npos) continue;
    auto e = item.find_last_not_of(ws);
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  for (const auto& tok : parse_string_list(text)) out.push_back(parse_double_value(tok, key));
  return out;
}

}  // namespace nomapair
