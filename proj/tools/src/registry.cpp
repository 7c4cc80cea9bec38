#include "spectral_cli/registry.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "spectral/error.hpp"

namespace spectral::cli {

namespace fs = std::filesystem;

double Params::get(const std::string& key, double fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  double v = 0.0;
  const auto& s = it->second;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw PreconditionError("--" + key + " expects a number, got '" + s + "'");
  }
  return v;
}

std::size_t Params::get_size(const std::string& key, std::size_t fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  std::size_t v = 0;
  const auto& s = it->second;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw PreconditionError("--" + key + " expects a non-negative integer, got '" + s + "'");
  }
  return v;
}

std::string Params::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

Context::Context(fs::path out_dir, std::optional<std::uint64_t> seed, Params params)
    : out_(std::move(out_dir)), seed_(seed), params_(std::move(params)) {}

void Context::write(const std::string& name, const std::function<void(std::ostream&)>& fill) {
  fs::create_directories(out_);
  const auto path = out_ / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  fill(f);
  f.close();
  if (!f) throw std::runtime_error("failed writing " + path.string());
  if (std::find(files_.begin(), files_.end(), name) == files_.end()) files_.push_back(name);
}

Registry Registry::with_defaults() {
  Registry r;
  register_builtin(r);
  return r;
}

void Registry::add(Experiment e) {
  if (e.name.empty()) throw PreconditionError("Registry::add: experiment name is empty");
  if (!e.run) throw PreconditionError("Registry::add: experiment '" + e.name + "' has no body");
  if (find(e.name)) throw PreconditionError("Registry::add: experiment '" + e.name + "' already registered");
  experiments_.push_back(std::move(e));
}

const Experiment* Registry::find(const std::string& name) const {
  for (const auto& e : experiments_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

std::string Registry::names() const {
  std::string s;
  for (const auto& e : experiments_) {
    if (!s.empty()) s += ", ";
    s += e.name;
  }
  return s;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  const std::string data = buf.str();
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed for " + path.string());
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

fs::path run_experiment(const Experiment& e, Context& ctx) {
  e.run(ctx);
  nlohmann::json files = nlohmann::json::array();
  for (const auto& name : ctx.files()) {
    const auto p = ctx.out_dir() / name;
    files.push_back({{"name", name}, {"bytes", fs::file_size(p)}, {"sha256", sha256_file(p)}});
  }
  nlohmann::json manifest;
  manifest["experiment"] = e.name;
  manifest["params"] = ctx.params().all();
  manifest["seed"] = ctx.seed() ? nlohmann::json(*ctx.seed()) : nlohmann::json(nullptr);
  manifest["files"] = files;
  const auto path = ctx.out_dir() / "manifest.json";
  std::ofstream f(path, std::ios::binary);
  f << manifest.dump(2) << '\n';
  if (!f) throw std::runtime_error("failed writing " + path.string());
  return path;
}

namespace {

void print_list(const Registry& registry, bool json, std::ostream& out) {
  if (json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : registry.list()) {
      arr.push_back({{"name", e.name}, {"description", e.description}, {"needs_seed", e.needs_seed}, {"keys", e.keys}});
    }
    out << arr.dump(2) << '\n';
    return;
  }
  std::size_t width = 0;
  for (const auto& e : registry.list()) width = std::max(width, e.name.size());
  for (const auto& e : registry.list()) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << e.name << e.description << '\n';
  }
}

// "--key value" and "--key=value" pairs left over by the option parser.
Params parse_overrides(const std::vector<std::string>& extras) {
  Params p;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const auto& a = extras[i];
    if (a.rfind("--", 0) != 0 || a.size() < 3) throw PreconditionError("unexpected argument '" + a + "'");
    const auto eq = a.find('=');
    if (eq != std::string::npos) {
      p.set(a.substr(2, eq - 2), a.substr(eq + 1));
      continue;
    }
    if (i + 1 >= extras.size()) throw PreconditionError("option '" + a + "' needs a value");
    p.set(a.substr(2), extras[++i]);
  }
  return p;
}

}  // namespace

int main_entry(int argc, const char* const* argv, const Registry& registry, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && args[0] != "list" && args[0] != "run" && args[0].rfind('-', 0) != 0) {
    args.insert(args.begin(), "run");
  }
  std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector

  CLI::App app{"Spectral methods experiment runner"};
  app.name("spectral-kit");
  app.require_subcommand(1);
  bool as_json = false;
  auto* list_cmd = app.add_subcommand("list", "List registered experiments");
  list_cmd->add_flag("--json", as_json, "Machine-readable output");
  auto* run_cmd = app.add_subcommand("run", "Run one experiment");
  std::string name;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::string config;
  run_cmd->add_option("experiment", name, "Experiment name")->required();
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_option("--seed", seed, "RNG seed (required by stochastic experiments)");
  run_cmd->add_option("--config", config, "key=value run configuration file");
  run_cmd->allow_extras();

  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "spectral-kit: " << e.what() << '\n';
    return bad_args;
  }

  if (list_cmd->parsed()) {
    print_list(registry, as_json, out);
    return ok;
  }

  const Experiment* e = registry.find(name);
  if (!e) {
    err << "spectral-kit: unknown experiment '" << name << "'. Valid names: " << registry.names() << '\n';
    return bad_args;
  }
  Params params;
  try {
    params = parse_overrides(run_cmd->remaining());
    if (!config.empty()) params.set("config", config);
    for (const auto& [key, value] : params.all()) {
      if (std::find(e->keys.begin(), e->keys.end(), key) == e->keys.end()) {
        std::string accepted;
        for (const auto& k : e->keys) accepted += (accepted.empty() ? "" : ", ") + k;
        throw PreconditionError("experiment '" + e->name + "' does not accept --" + key +
                                (accepted.empty() ? std::string(" (it takes no parameters)")
                                                  : " (accepted: " + accepted + ")"));
      }
    }
    if (e->needs_seed && !seed) throw PreconditionError("experiment '" + e->name + "' requires --seed");
  } catch (const PreconditionError& ex) {
    err << "spectral-kit: " << ex.what() << '\n';
    return bad_args;
  }

  try {
    Context ctx(out_dir, seed, params);
    const auto manifest = run_experiment(*e, ctx);
    out << e->name << ": wrote " << ctx.files().size() << " files, manifest " << manifest.string() << '\n';
    return ok;
  } catch (const NumericalError& ex) {
    err << "spectral-kit: " << e->name << ": numerical failure: " << ex.what() << '\n';
    return numerical;
  } catch (const PreconditionError& ex) {
    err << "spectral-kit: " << e->name << ": " << ex.what() << '\n';
    return bad_args;
  } catch (const DomainError& ex) {
    err << "spectral-kit: " << e->name << ": " << ex.what() << '\n';
    return bad_args;
  } catch (const std::exception& ex) {
    err << "spectral-kit: " << e->name << ": " << ex.what() << '\n';
    return failure;
  }
}

}  // namespace spectral::cli
