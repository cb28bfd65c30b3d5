#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "castml/cas/protocol.hpp"
#include "castml/compiler.hpp"

namespace castml::cli {

namespace fs = std::filesystem;

namespace {

std::optional<std::string> read_file(const std::string& path, std::string& reason) {
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    reason = "is a directory";
    return std::nullopt;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    reason = fs::exists(path, ec) ? "cannot be read" : "no such file";
    return std::nullopt;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void print_diagnostics(const std::string& file, const Diagnostics& diags, int verbosity, std::ostream& err) {
  for (const auto& d : diags.items()) {
    if (d.severity == Severity::Note && verbosity < 1) continue;
    err << format_diagnostic(file, d) << '\n';
  }
}

int compile(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  std::string reason;
  const auto source = read_file(config.input_path, reason);
  if (!source) {
    err << fmt::format("{}: error: cannot open input file ({})\n", config.input_path, reason);
    return kFailure;
  }

  html::EmitOptions options;
  options.standalone = config.standalone;
  if (config.runtime_path) options.runtime_path = *config.runtime_path;
  const CompileResult result = compile_document(*source, options);
  print_diagnostics(config.input_path, result.diagnostics, config.verbosity, err);
  if (!result.ok) return kFailure;

  const std::string output = config.output_path.empty() ? default_output_path(config.input_path) : config.output_path;
  if (!config.check_only) {
    std::ofstream file(output, std::ios::binary | std::ios::trunc);
    file << result.html;
    file.close();
    if (!file) {
      err << fmt::format("{}: error: cannot write output file\n", output);
      return kFailure;
    }
  }
  if (config.verbosity >= 1) {
    out << fmt::format("{}: {} cell(s), {} math span(s), {} warning(s){}\n", config.input_path, result.cells.size(),
                       result.math_spans, result.diagnostics.count(Severity::Warning),
                       config.check_only ? "" : fmt::format(", wrote {}", output));
  }
  if (config.verbosity >= 2) {
    for (const auto& cell : result.cells) {
      out << fmt::format("  {} [{}] {}\n", cell.id, tex::to_string(cell.mode), cell.command);
    }
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out << fmt::format("  elapsed {:.1f} ms\n", ms);
  }
  return kSuccess;
}

int eval_one(const std::string& command, const std::string& mode, const std::string& id, std::ostream& out) {
  cas::EvalRequest request;
  request.id = id;
  request.command = command;
  request.mode = mode == "text" ? cas::EvalMode::Text : cas::EvalMode::Math;
  const auto response = cas::evaluate(request);
  out << cas::to_json(response) << '\n';
  return response.status == cas::EvalStatus::Ok ? kSuccess : kFailure;
}

// One JSON EvalRequest per input line, one EvalResponse per output line.
int eval_stream(std::istream& in, std::ostream& out) {
  int status = kSuccess;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    cas::EvalResponse response;
    try {
      response = cas::evaluate(cas::parse_request(line));
    } catch (const cas::ProtocolError& e) {
      response.status = cas::EvalStatus::Error;
      response.kind = cas::PayloadKind::Text;
      response.payload = std::string("malformed request: ") + e.what();
      response.diagnostics.push_back(response.payload);
    }
    if (response.status != cas::EvalStatus::Ok) status = kFailure;
    out << cas::to_json(response) << '\n' << std::flush;
  }
  return status;
}

}  // namespace

std::string default_output_path(const std::string& input) {
  fs::path p(input);
  p.replace_extension(".html");
  return p.string();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"castml: compile LaTeX with interactive CAS cells to HTML5+MathML", "castml"};
  app.set_version_flag("--version", "castml 0.3.0");

  CliConfig config;
  bool standalone_flag = false;
  app.add_option("input", config.input_path, "LaTeX source file");
  app.add_option("-o,--output", config.output_path, "Output HTML path (default: input with .html)");
  auto* standalone = app.add_flag("--standalone", standalone_flag, "Inline the cell runtime (default)");
  auto* runtime = app.add_option("--runtime-path", config.runtime_path,
                                 "Reference the cell runtime at PATH instead of inlining it");
  standalone->excludes(runtime);
  app.add_flag("--check", config.check_only, "Parse and validate without writing output");
  app.add_flag("-v", config.verbosity, "Increase verbosity (-v, -vv)");

  std::string command;
  std::string mode = "math";
  std::string id = "eval";
  bool from_stdin = false;
  auto* eval = app.add_subcommand("eval", "Evaluate one CAS command and print the JSON response");
  eval->add_option("command", command, "Command, e.g. \"factor(x^10-1)\"");
  eval->add_option("--mode", mode, "Result mode")->check(CLI::IsMember({"math", "text"}));
  eval->add_option("--id", id, "Request id");
  eval->add_flag("--stdin", from_stdin, "Read JSON EvalRequest lines from standard input");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  if (*eval) {
    if (from_stdin) {
      if (!command.empty()) {
        err << "castml: error: eval takes either a command or --stdin\n";
        return kUsage;
      }
      return eval_stream(in, out);
    }
    if (eval->count("command") == 0) {
      err << "castml: error: eval needs a command\n" << eval->help();
      return kUsage;
    }
    return eval_one(command, mode, id, out);
  }

  if (config.input_path.empty()) {
    err << "castml: error: no input file\n" << app.help();
    return kUsage;
  }
  config.standalone = !config.runtime_path.has_value();
  return compile(config, out, err);
}

}  // namespace castml::cli
