#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <new>

#include "CLI11.hpp"
#include "lvlab/errors.hpp"
#include "lvlab/parallel.hpp"
#include "lvlab_cli/commands.hpp"

namespace {

std::string flag_name(std::string key) {
  for (auto& c : key)
    if (c == '_') c = '-';
  return "--" + key;
}

int run(int argc, char** argv) {
  using namespace lvlab::cli;
  CLI::App app{"lvlab: large values of Dirichlet polynomials and zero-density experiments"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  struct Sub {
    CLI::App* app;
    std::string config;
    std::map<std::string, std::string> flags;
  };
  std::vector<std::unique_ptr<Sub>> subs;
  for (const auto& info : commands()) {
    auto s = std::make_unique<Sub>();
    s->app = app.add_subcommand(info.name, info.summary);
    s->app->add_option("--config", s->config, "key=value configuration file; flags override it");
    for (const auto& key : info.keys) s->app->add_option(flag_name(key), s->flags[key], key);
    subs.push_back(std::move(s));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    auto& s = *subs[i];
    if (!s.app->parsed()) continue;
    const auto& info = commands()[i];
    RunConfig cfg;
    cfg.command = info.name;
    if (!s.config.empty()) load_config(s.config, cfg);
    for (const auto& key : info.keys)
      if (s.app->count(flag_name(key)) > 0) cfg.set(key, s.flags[key]);

    const auto& raw = cfg.values();
    auto value_of = [&](const std::string& k, const std::string& def) {
      const auto it = raw.find(k);
      return it == raw.end() ? def : it->second;
    };
    const std::string threads = value_of("threads", "");
    if (!threads.empty()) {
      long n = 0;
      try {
        n = std::stol(threads);
      } catch (...) {
        n = -1;
      }
      if (n < 1) throw lvlab::InvalidInput("parameter 'threads' must be a positive integer");
      lvlab::set_thread_count(static_cast<unsigned>(n));
    }
    const std::string format = value_of("format", info.csv_default ? "csv" : "json");
    if (format != "csv" && format != "json") throw lvlab::InvalidInput("parameter 'format': expected csv or json");

    Report rep = dispatch(cfg);
    std::string text;
    if (format == "csv" && !rep.csv.empty()) {
      text = dump_csv(rep.csv);
    } else {
      text = dump_json(rep.to_json());
    }
    const std::string out = value_of("output", "");
    if (out.empty() || out == "-") {
      std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f) throw lvlab::InvalidInput("cannot write output file '" + out + "'");
      f << text;
    }
    for (const auto& c : rep.checks)
      if (!c.pass) std::cerr << "lvlab: alarm: " << c.name << " (value " << c.value << ", threshold " << c.threshold << ")\n";
    return exit_code(rep);
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lvlab::Error& e) {
    std::cerr << "lvlab: error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::bad_alloc&) {
    std::cerr << "lvlab: error: out of memory\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "lvlab: error: " << e.what() << "\n";
    return 1;
  }
}
