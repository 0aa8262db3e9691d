#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nomapair {

// Flat key-value configs: one `key = value` per line, `#` starts a comment,
// blank lines ignored. Values keep internal whitespace; keys and values are
// trimmed. Duplicate keys: last one wins.
using KvMap = std::map<std::string, std::string>;

KvMap parse_kv_text(const std::string& text, const std::string& origin);
KvMap parse_kv_file(const std::string& path);

// Typed lookups. All throw ConfigError naming the key on parse failure;
// `require_*` also throws when the key is absent.
bool kv_has(const KvMap& kv, const std::string& key);
std::string require_string(const KvMap& kv, const std::string& key);
double require_double(const KvMap& kv, const std::string& key);
long long require_int(const KvMap& kv, const std::string& key);

std::string get_string(const KvMap& kv, const std::string& key, const std::string& fallback);
double get_double(const KvMap& kv, const std::string& key, double fallback);
long long get_int(const KvMap& kv, const std::string& key, long long fallback);
std::uint64_t get_u64(const KvMap& kv, const std::string& key, std::uint64_t fallback);

// Comma-separated lists ("1, 2.5, 3"). Empty/blank value -> empty list.
std::vector<double> parse_double_list(const std::string& text, const std::string& key);
std::vector<std::string> parse_string_list(const std::string& text);

double parse_double_value(const std::string& text, const std::string& key);
long long parse_int_value(const std::string& text, const std::string& key);

}  // namespace nomapair
