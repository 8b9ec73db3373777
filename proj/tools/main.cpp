#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "runner.hpp"

namespace {

using hclab::cli::json;

std::string default_dir() {
  const char* env = std::getenv("HCLAB_OUTPUT_DIR");
  return env ? std::string(env) : std::string();
}

int emit(const std::string& text, const std::string& output, const std::string& fallback_name) {
  std::string path = output;
  if (path.empty() && !default_dir().empty()) path = (std::filesystem::path(default_dir()) / fallback_name).string();
  if (path.empty()) {
    std::cout << text;
  } else {
    hclab::io::write_file(path, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hclab: experiments on hypercyclic and mixing operators"};
  app.require_subcommand(1);
  unsigned threads = 1;
  std::string output, format = "json";
  app.add_option("--threads", threads, "worker threads (1 gives byte-stable output)")->check(CLI::PositiveNumber);

  struct Bound {
    const hclab::cli::Command* cmd;
    CLI::App* sub;
    std::map<std::string, std::string> raw;
  };
  std::vector<Bound> bound;
  bound.reserve(hclab::cli::commands().size());
  for (const auto& cmd : hclab::cli::commands()) {
    bound.push_back({&cmd, app.add_subcommand(cmd.name, cmd.help), {}});
    Bound& b = bound.back();
    for (const auto& o : cmd.options) {
      b.sub->add_option("--" + o.name, b.raw[o.name], o.help + " [default " + o.fallback.dump() + "]");
    }
    b.sub->add_option("-o,--output", output, "output file (default $HCLAB_OUTPUT_DIR/<command>.<format> or stdout)");
    b.sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    b.sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  }

  std::string config_path;
  auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
  run->add_option("--config", config_path, "config file {command, params, format, output}")->required();
  run->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  std::string suite = "all", dir;
  auto* goldens = app.add_subcommand("emit-goldens", "regenerate golden regression files");
  goldens->add_option("--suite", suite, "suite name or all");
  goldens->add_option("--dir", dir, "target directory (default $HCLAB_OUTPUT_DIR or .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : hclab::cli::kExitInputError;
  }

  try {
    if (goldens->parsed()) {
      if (dir.empty()) dir = default_dir().empty() ? "." : default_dir();
      std::filesystem::create_directories(dir);
      json written = json::array();
      for (const auto& [name, text] : hclab::cli::emit_goldens(suite)) {
        hclab::io::write_file((std::filesystem::path(dir) / name).string(), text);
        written.push_back(name);
      }
      std::cout << hclab::io::dump({{"suite", suite}, {"dir", dir}, {"files", written}});
      return 0;
    }
    if (run->parsed()) {
      std::ifstream in(config_path);
      if (!in) throw hclab::InputError("cannot read config '" + config_path + "'");
      json config;
      try {
        config = json::parse(in);
      } catch (const json::exception& e) {
        throw hclab::InputError(std::string("config is not valid JSON: ") + e.what());
      }
      if (!config.is_object() || !config.contains("command") || !config["command"].is_string()) {
        throw hclab::InputError("config needs a \"command\" string");
      }
      for (const auto& [key, value] : config.items()) {
        if (key != "command" && key != "params" && key != "format" && key != "output") {
          throw hclab::InputError("config: unknown key '" + key + "'");
        }
      }
      const std::string command = config["command"];
      const std::string fmt = config.value("format", "json");
      const auto r = hclab::cli::render(command, config.value("params", json::object()), fmt, threads);
      emit(r.text, config.value("output", ""), command + "." + fmt);
      return r.exit_code;
    }
    for (auto& b : bound) {
      if (!b.sub->parsed()) continue;
      json given = json::object();
      for (const auto& o : b.cmd->options) {
        if (b.sub->count("--" + o.name) > 0) given[o.name] = hclab::cli::parse_flag(o, b.raw[o.name]);
      }
      const auto r = hclab::cli::render(b.cmd->name, given, format, threads);
      emit(r.text, output, b.cmd->name + "." + format);
      return r.exit_code;
    }
  } catch (const hclab::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hclab::cli::kExitInputError;
  } catch (const hclab::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return hclab::cli::kExitInputError;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hclab::cli::kExitInputError;
  }
  return hclab::cli::kExitInputError;
}
