#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace grw::cli {

struct KeySpec {
  std::string name;
  std::string default_value;  ///< empty means unset
  std::string help;
  bool required = false;
};

/// Fully resolved settings of one subcommand: defaults, then the config file,
/// then explicit flags.
class RunConfig {
 public:
  RunConfig(std::string command, std::vector<KeySpec> keys);

  const std::string& command() const { return command_; }
  const std::vector<KeySpec>& keys() const { return keys_; }

  /// Reads flat "key = value" text. Throws InvalidParameter on unknown keys,
  /// malformed lines or a different command.
  void load(std::istream& in, const std::string& origin);
  void set(const std::string& key, const std::string& value);
  /// Throws InvalidParameter when a required key is unset.
  void validate() const;
  /// Every key in declaration order, command first.
  void echo(std::ostream& out) const;

  bool has(const std::string& key) const;
  std::string str(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  std::uint64_t unsigned_integer(const std::string& key) const;
  double real(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<std::int64_t> integers(const std::string& key) const;
  std::optional<std::uint64_t> optional_unsigned(const std::string& key) const;
  std::optional<double> optional_real(const std::string& key) const;

 private:
  const KeySpec& spec(const std::string& key) const;

  std::string command_;
  std::vector<KeySpec> keys_;
  std::map<std::string, std::string> values_;
};

}  // namespace grw::cli
