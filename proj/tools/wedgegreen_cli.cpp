#include "wedgegreen/scan.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitTolerance = 3;

struct Options {
  std::string config;
  std::string out;
  std::string trunc;
  std::string format;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wedgegreen::ConfigError("/", "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("error writing " + path);
}

// Folds command-line overrides into the config document.
std::string effective_config(const Options& opt) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(opt.config));
  } catch (const nlohmann::json::parse_error& e) {
    throw wedgegreen::ConfigError("/", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw wedgegreen::ConfigError("/", "expected an object");
  if (!opt.out.empty()) j["output"] = opt.out;
  if (!opt.format.empty()) j["format"] = opt.format;
  if (!opt.trunc.empty()) {
    const auto comma = opt.trunc.find(',');
    int m = 0, p = 0;
    try {
      if (comma == std::string::npos) throw std::invalid_argument("comma");
      std::size_t used = 0;
      m = std::stoi(opt.trunc.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("m");
      const std::string rest = opt.trunc.substr(comma + 1);
      p = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("p");
    } catch (const std::exception&) {
      throw wedgegreen::ConfigError("--trunc", "expected M,P");
    }
    j["truncation"] = {{"m_max", m}, {"p_max", p}};
  }
  return j.dump();
}

int run(wedgegreen::ScanMode mode, const Options& opt) {
  try {
    const std::string text = effective_config(opt);
    const wedgegreen::ScanConfig cfg = wedgegreen::parse_scan_config(text, mode);
    const wedgegreen::ScanOutput result = wedgegreen::run_scan(cfg, text);
    if (cfg.output.empty()) {
      std::cout << result.data;
      std::cerr << result.manifest;
    } else {
      write_file(cfg.output, result.data);
      write_file(cfg.output + ".manifest.json", result.manifest);
    }
    if (result.tolerance_failed) {
      std::cerr << "convergence tolerance exceeded in " << result.unconverged << " rows\n";
      return kExitTolerance;
    }
    return kExitOk;
  } catch (const wedgegreen::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Imaginary Green's tensor, decay rates and spot sizes near a conducting wedge"};
  app.require_subcommand(1);
  Options opt;
  int status = kExitOk;

  const std::pair<const char*, const char*> commands[] = {
      {"decay-map", "Normalised decay rate on a 2D grid"},
      {"cdr-map", "Normalised cooperative decay rate on a 2D grid"},
      {"green-point", "Normalised Im G tensor at one point pair"},
      {"convergence", "Series against the half-space image oracle"},
      {"sted-spot", "Ring-mask spot sizes and detection profiles"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config, "JSON configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Dataset path (manifest goes to PATH.manifest.json)");
    sub->add_option("--trunc", opt.trunc, "Truncation override M,P");
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    const auto mode = *wedgegreen::mode_from_name(name);
    sub->callback([&status, &opt, mode] { status = run(mode, opt); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  return status;
}
