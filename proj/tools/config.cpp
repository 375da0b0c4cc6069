#include "config.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "grw/error.hpp"

namespace grw::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc() && ptr == text.data() + text.size() && !text.empty(), ErrorCode::InvalidParameter,
          "bad value '" + text + "' for " + key);
  return value;
}

}  // namespace

RunConfig::RunConfig(std::string command, std::vector<KeySpec> keys)
    : command_(std::move(command)), keys_(std::move(keys)) {
  for (const KeySpec& k : keys_) {
    if (!k.default_value.empty()) values_[k.name] = k.default_value;
  }
}

const KeySpec& RunConfig::spec(const std::string& key) const {
  for (const KeySpec& k : keys_) {
    if (k.name == key) return k;
  }
  throw Error(ErrorCode::InvalidParameter, "unknown key '" + key + "' for " + command_);
}

void RunConfig::load(std::istream& in, const std::string& origin) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    require(eq != std::string::npos, ErrorCode::InvalidParameter,
            origin + ":" + std::to_string(number) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key == "command") {
      require(value == command_, ErrorCode::InvalidParameter,
              origin + ": config is for '" + value + "', not '" + command_ + "'");
      continue;
    }
    set(key, value);
  }
}

void RunConfig::set(const std::string& key, const std::string& value) {
  spec(key);
  if (value.empty()) {
    values_.erase(key);
  } else {
    values_[key] = value;
  }
}

void RunConfig::validate() const {
  for (const KeySpec& k : keys_) {
    require(!k.required || has(k.name), ErrorCode::InvalidParameter, "--" + k.name + " is required");
  }
}

void RunConfig::echo(std::ostream& out) const {
  out << "command = " << command_ << '\n';
  for (const KeySpec& k : keys_) out << k.name << " = " << (has(k.name) ? values_.at(k.name) : "") << '\n';
}

bool RunConfig::has(const std::string& key) const {
  spec(key);
  return values_.count(key) != 0;
}

std::string RunConfig::str(const std::string& key) const {
  return has(key) ? values_.at(key) : std::string();
}

std::int64_t RunConfig::integer(const std::string& key) const {
  require(has(key), ErrorCode::InvalidParameter, "--" + key + " is required");
  return parse_number<std::int64_t>(key, values_.at(key));
}

std::uint64_t RunConfig::unsigned_integer(const std::string& key) const {
  require(has(key), ErrorCode::InvalidParameter, "--" + key + " is required");
  return parse_number<std::uint64_t>(key, values_.at(key));
}

double RunConfig::real(const std::string& key) const {
  require(has(key), ErrorCode::InvalidParameter, "--" + key + " is required");
  return parse_number<double>(key, values_.at(key));
}

bool RunConfig::flag(const std::string& key) const {
  const std::string v = str(key);
  if (v.empty() || v == "false" || v == "0") return false;
  require(v == "true" || v == "1", ErrorCode::InvalidParameter, "bad value '" + v + "' for " + key);
  return true;
}

std::vector<std::int64_t> RunConfig::integers(const std::string& key) const {
  require(has(key), ErrorCode::InvalidParameter, "--" + key + " is required");
  std::vector<std::int64_t> out;
  const std::string& text = values_.at(key);
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    out.push_back(parse_number<std::int64_t>(key, trim(text.substr(start, end - start))));
    start = end + 1;
  }
  return out;
}

std::optional<std::uint64_t> RunConfig::optional_unsigned(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return unsigned_integer(key);
}

std::optional<double> RunConfig::optional_real(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return real(key);
}

}  // namespace grw::cli
