#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spectral::cli {

/// Flat key=value overrides. Typed getters raise PreconditionError on
/// malformed values.
class Params {
 public:
  void set(const std::string& key, const std::string& value) { kv_[key] = value; }
  [[nodiscard]] bool has(const std::string& key) const { return kv_.count(key) != 0; }

  [[nodiscard]] double get(const std::string& key, double fallback) const;
  [[nodiscard]] std::size_t get_size(const std::string& key, std::size_t fallback) const;
  [[nodiscard]] std::string get_string(const std::string& key, const std::string& fallback) const;

  [[nodiscard]] const std::map<std::string, std::string>& all() const noexcept { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

/// Output sink of one experiment run. Every file goes through here so the
/// manifest can hash it.
class Context {
 public:
  Context(std::filesystem::path out_dir, std::optional<std::uint64_t> seed, Params params);

  [[nodiscard]] const Params& params() const noexcept { return params_; }
  [[nodiscard]] std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  [[nodiscard]] const std::filesystem::path& out_dir() const noexcept { return out_; }

  /// Writes `name` in the output directory from whatever `fill` streams.
  void write(const std::string& name, const std::function<void(std::ostream&)>& fill);

  /// Writes a gnuplot script `name` (plain text).
  void plot(const std::string& name, const std::string& script) { write(name, [&](std::ostream& o) { o << script; }); }

  [[nodiscard]] const std::vector<std::string>& files() const noexcept { return files_; }

 private:
  std::filesystem::path out_;
  std::optional<std::uint64_t> seed_;
  Params params_;
  std::vector<std::string> files_;
};

struct Experiment {
  std::string name;
  std::string description;
  bool needs_seed = false;
  std::vector<std::string> keys;  // accepted --key overrides
  std::function<void(Context&)> run;
};

class Registry {
 public:
  /// The twelve built-in experiments.
  static Registry with_defaults();

  /// PreconditionError on a duplicate or empty name.
  void add(Experiment e);

  [[nodiscard]] const std::vector<Experiment>& list() const noexcept { return experiments_; }
  [[nodiscard]] const Experiment* find(const std::string& name) const;
  [[nodiscard]] std::string names() const;

 private:
  std::vector<Experiment> experiments_;
};

void register_builtin(Registry& registry);

/// Lowercase hex SHA-256 of a file's bytes.
[[nodiscard]] std::string sha256_file(const std::filesystem::path& path);

/// Runs an experiment and writes manifest.json. Returns the manifest path.
std::filesystem::path run_experiment(const Experiment& e, Context& ctx);

enum ExitCode : int { ok = 0, failure = 1, bad_args = 2, numerical = 3 };

/// Command-line entry point:
///   spectral-kit list [--json]
///   spectral-kit [run] <experiment> [--key value]... [--out DIR] [--seed S] [--config FILE]
int main_entry(int argc, const char* const* argv, const Registry& registry, std::ostream& out, std::ostream& err);

}  // namespace spectral::cli
