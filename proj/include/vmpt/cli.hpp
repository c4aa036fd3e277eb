#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vmpt/analysis.hpp"
#include "vmpt/config.hpp"
#include "vmpt/environment.hpp"
#include "vmpt/errors.hpp"
#include "vmpt/fixtures.hpp"
#include "vmpt/generator.hpp"
#include "vmpt/trace_io.hpp"

namespace vmpt::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kUsage = 2,
  kIo = 3,
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

namespace detail {

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for reading");
  std::string text(std::istreambuf_iterator<char>(file), {});
  if (file.bad()) throw IoError("read failed on '" + path + "'");
  return text;
}

// Writes to a sibling temp file and renames it over `path`, so a failure
// never leaves a partial file behind.
inline void write_output(const std::string& path, const std::string& content,
                         std::ostream& out) {
  if (path == "-") {
    out << content;
    out.flush();
    if (!out) throw IoError("write to standard output failed");
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp-vmpt";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + tmp.string() + "' for writing");
    file.write(content.data(), static_cast<std::streamsize>(content.size()));
    file.flush();
    if (!file) {
      file.close();
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoError("write failed on '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot rename onto '" + path + "': " + ec.message());
  }
}

inline Trace load_trace(const std::string& path, std::istream& in) {
  return read_trace_string(read_input(path, in));
}

}  // namespace detail

struct GenerateArgs {
  std::optional<std::string> env, config;
  std::optional<std::uint64_t> seed;
  std::optional<Tick> horizon;
  std::optional<std::uint32_t> dcs;
  bool guarantee = false;
  std::string out;
};

inline GeneratorConfig resolve_config(const GenerateArgs& a, std::istream& in) {
  GeneratorConfig config;
  if (a.config) config = parse_config(detail::read_input(*a.config, in), config);
  if (a.env) config.environment = parse_environment(*a.env);
  if (a.seed) config.seed = *a.seed;
  if (a.horizon) config.horizon = *a.horizon;
  if (a.dcs) config.num_datacenters = *a.dcs;
  if (a.guarantee) config.guarantee_dynamics = true;
  validate_config(config);
  return config;
}

inline std::string list_envs_text() {
  std::string text;
  for (EnvironmentId env : enumerate_environments()) text += describe(env) + "\n";
  return text;
}

/// Runs one command line (without the program name). Never throws.
inline int run(std::vector<std::string> args, Streams io) {
  CLI::App app{"Trace generator, validator and classifier for VMP environments", "vmpt"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a synthetic trace");
  generate->add_option("--env", gen.env, "Environment as E,O");
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--horizon", gen.horizon, "Number of ticks T");
  generate->add_option("--dcs", gen.dcs, "Number of datacenters K");
  generate->add_option("--config", gen.config, "JSON config file (overridden by the flags above)");
  generate->add_flag("--guarantee-dynamics", gen.guarantee,
                     "Force every enabled capability to appear");
  generate->add_option("--out", gen.out, "Output path or -")->required();

  std::string fixture_id, fixture_out;
  auto* fixture = app.add_subcommand("fixture", "Write one of the worked-example traces");
  fixture->add_option("--id", fixture_id, "0,1 | 0,2 | 1,0 | 2,0")->required();
  fixture->add_option("--out", fixture_out, "Output path or -")->required();

  std::string in_path, mode = "strict", format, out_path = "-", to;
  std::optional<std::string> declared;
  bool arrival_as_horizontal = false;
  int precision = 4;

  auto* validate_cmd = app.add_subcommand("validate", "Validate a trace");
  validate_cmd->add_option("--in", in_path, "Trace path or -")->required();
  validate_cmd->add_option("--mode", mode, "strict | paper")
      ->check(CLI::IsMember({"strict", "paper"}));
  validate_cmd->add_option("--declared", declared, "Environment to check against (E,O)");
  validate_cmd->add_option("--format", format, "table | json")
      ->check(CLI::IsMember({"table", "json"}));

  auto* classify_cmd = app.add_subcommand("classify", "Infer the environment of a trace");
  classify_cmd->add_option("--in", in_path, "Trace path or -")->required();
  classify_cmd->add_flag("--arrival-as-horizontal", arrival_as_horizontal,
                         "Count a service arriving alongside others as horizontal elasticity");

  auto* stats_cmd = app.add_subcommand("stats", "Per-datacenter, per-tick totals");
  stats_cmd->add_option("--in", in_path, "Trace path or -")->required();
  stats_cmd->add_option("--format", format, "json | table")
      ->check(CLI::IsMember({"table", "json"}));
  stats_cmd->add_option("--precision", precision, "Ratio decimals")->check(CLI::Range(0, 6));
  stats_cmd->add_option("--out", out_path, "Output path or -");

  auto* convert = app.add_subcommand("convert", "Convert a trace to another format");
  convert->add_option("--in", in_path, "Trace path or -")->required();
  convert->add_option("--to", to, "csv | jsonl")
      ->required()
      ->check(CLI::IsMember({"csv", "jsonl"}));
  convert->add_option("--out", out_path, "Output path or -")->required();

  auto* list_envs = app.add_subcommand("list-envs", "Print the 16 environments");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    io.out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    io.out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    io.err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (generate->parsed()) {
      const GeneratorConfig config = resolve_config(gen, io.in);
      detail::write_output(gen.out, write_trace_string(vmpt::generate(config)), io.out);
      return kOk;
    }
    if (fixture->parsed()) {
      const FixtureId id = parse_fixture_id(fixture_id);
      detail::write_output(fixture_out, write_trace_string(example_trace(id)), io.out);
      return kOk;
    }
    if (validate_cmd->parsed()) {
      const ValidationMode vmode = parse_validation_mode(mode);
      std::optional<EnvironmentId> env;
      if (declared) env = parse_environment(*declared);
      const Trace trace = detail::load_trace(in_path, io.in);
      const ValidationReport report = vmpt::validate(trace, vmode, env);
      io.out << (format == "json" ? report_to_json(report) : report_to_table(report));
      return report.ok() ? kOk : kValidationFailed;
    }
    if (classify_cmd->parsed()) {
      const Trace trace = detail::load_trace(in_path, io.in);
      try {
        io.out << classify(trace, arrival_as_horizontal).to_string() << "\n";
      } catch (const ValidationError& e) {
        io.err << "error: " << e.what() << "\n";
        return kValidationFailed;
      }
      return kOk;
    }
    if (stats_cmd->parsed()) {
      const Trace trace = detail::load_trace(in_path, io.in);
      const StatsSeries series = vmpt::stats(trace, precision);
      detail::write_output(out_path,
                           format == "table" ? stats_to_table(series) : stats_to_json(series),
                           io.out);
      return kOk;
    }
    if (convert->parsed()) {
      const Trace trace = detail::load_trace(in_path, io.in);
      std::ostringstream buffer;
      if (to == "csv") {
        write_csv(trace, buffer);
      } else {
        write_trace(trace, buffer);
      }
      detail::write_output(out_path, buffer.str(), io.out);
      return kOk;
    }
    if (list_envs->parsed()) {
      io.out << list_envs_text();
      return kOk;
    }
  } catch (const ConfigError& e) {
    io.err << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    // Bad coordinates, fixture ids and similar argument values.
    io.err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const ParseError& e) {
    io.err << "parse error: " << e.what() << "\n";
    return kIo;
  } catch (const FormatError& e) {
    io.err << "format error: " << e.what() << "\n";
    return kIo;
  } catch (const IntegrityError& e) {
    io.err << "integrity error: " << e.what() << "\n";
    return kIo;
  } catch (const IoError& e) {
    io.err << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return kIo;
  }
  return kUsage;
}

inline int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), Streams{std::cin, std::cout, std::cerr});
}

}  // namespace vmpt::cli
