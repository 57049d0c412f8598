// arbiter: compile policies, check theories, query and serve applications.

#include "arbiter/codec.hpp"
#include "arbiter/registry.hpp"
#include "arbiter/rule_lang.hpp"
#include "arbiter/service.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using arbiter::codec::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw arbiter::Error(arbiter::Code::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string default_registry() {
  const char* env = std::getenv("ARBITER_REGISTRY");
  return env && *env ? env : "arbiter-registry";
}

arbiter::CompileMode mode_of(const std::string& text) {
  auto m = arbiter::parse_compile_mode(text);
  if (!m) throw arbiter::Error(arbiter::Code::InvalidRequest, "mode must be basic or advanced");
  return *m;
}

arbiter::RegistrationRequest request_for(const std::string& path, const std::string& mode) {
  arbiter::RegistrationRequest req;
  req.mode = mode_of(mode);
  if (ends_with(path, ".sbp")) {
    req.sbp = read_file(path);
  } else {
    req.grg = read_file(path);
  }
  return req;
}

void print_diagnostics(const std::vector<arbiter::Diagnostic>& diags, const std::string& file) {
  for (const auto& d : diags) std::cerr << file << (d.line > 0 ? ":" : ": ") << arbiter::format(d) << "\n";
}

int report(const arbiter::Error& e, const std::string& file, bool as_json) {
  std::vector<arbiter::Diagnostic> diags;
  if (const auto* all = dynamic_cast<const arbiter::DiagnosticsError*>(&e)) {
    diags = all->diagnostics();
  } else {
    diags.push_back(e.diagnostic());
  }
  if (as_json) std::cout << arbiter::codec::error_body(e).dump(2) << "\n";
  print_diagnostics(diags, file);
  return 1;
}

// App folder, source file or registered id.
arbiter::ApplicationRecord resolve(const std::string& target, const std::string& mode, const std::string& registry) {
  if (fs::is_directory(target) && fs::exists(fs::path(target) / "revision")) {
    return arbiter::load_application_dir(target);
  }
  if (fs::is_regular_file(target)) {
    return arbiter::build_record(fs::path(target).stem().string(), request_for(target, mode));
  }
  arbiter::Registry reg(registry);
  if (auto rec = reg.get(target)) return *rec;
  throw arbiter::Error(arbiter::Code::UnknownApplication,
                       "'" + target + "' is neither an application folder, a source file nor registered in " + registry);
}

std::string text_of(const json& response) {
  std::ostringstream out;
  const auto& options = response["acceptable_options"];
  if (options.empty()) out << "no acceptable option\n";
  for (const auto& e : response["explanations"]) out << e["text"].get<std::string>() << "\n";
  if (response["ambiguous"].get<bool>()) out << "ambiguous: complementary options are both acceptable\n";
  if (response.contains("abduction")) {
    if (response["abduction"].empty()) out << "no assumptions make the option acceptable\n";
    for (const auto& s : response["abduction"]) {
      std::string set;
      for (const auto& a : s["assumptions"]) set += (set.empty() ? "" : ", ") + a.get<std::string>();
      out << "assuming {" << set << "}: " << s["explanation"]["text"].get<std::string>() << "\n";
    }
  }
  return out.str();
}

arbiter::HttpServer* running_server = nullptr;

void on_signal(int) {
  if (running_server) running_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Argumentation-based decision policies: compile, check, query and serve."};
  app.require_subcommand(1);

  std::string file, out_path, mode = "advanced", target, registry = default_registry(), app_id, name;
  std::string bind_addr = "127.0.0.1", abduce;
  std::vector<std::string> facts, binds;
  int port = 8080;
  bool as_json = false, as_text = false;

  auto* compile = app.add_subcommand("compile", "Compile a .sbp policy into a rule theory");
  compile->add_option("policy", file, "Policy file")->required()->check(CLI::ExistingFile);
  compile->add_option("--mode", mode, "basic or advanced")->check(CLI::IsMember({"basic", "advanced"}));
  compile->add_option("-o,--output", out_path, "Output .grg file (default: stdout)");

  auto* check = app.add_subcommand("check", "Parse and validate a .grg theory or .sbp policy");
  check->add_option("file", file, "Source file")->required()->check(CLI::ExistingFile);
  check->add_option("--mode", mode, "Compile mode for policies")->check(CLI::IsMember({"basic", "advanced"}));
  check->add_flag("--json", as_json, "Diagnostics as JSON on stdout");

  auto* reg = app.add_subcommand("register", "Register an application in a registry directory");
  reg->add_option("id", app_id, "Application id")->required();
  reg->add_option("file", file, "Source .sbp or .grg")->required()->check(CLI::ExistingFile);
  reg->add_option("--mode", mode, "Compile mode for policies")->check(CLI::IsMember({"basic", "advanced"}));
  reg->add_option("--name", name, "Display name");
  reg->add_option("--registry", registry, "Registry directory (default: $ARBITER_REGISTRY)");

  auto* meta = app.add_subcommand("metadata", "Print the options and scenario elements of an application");
  meta->add_option("app", target, "Application folder, source file or registered id")->required();
  meta->add_option("--mode", mode, "Compile mode for policies")->check(CLI::IsMember({"basic", "advanced"}));
  meta->add_option("--registry", registry, "Registry directory (default: $ARBITER_REGISTRY)");

  auto* query = app.add_subcommand("query", "Decide in a context and explain the acceptable options");
  query->add_option("app", target, "Application folder, source file or registered id")->required();
  query->add_option("--fact", facts, "Propositional scenario element that holds");
  query->add_option("--bind", binds, "Numeric input, name=value");
  query->add_option("--abduce", abduce, "Search minimal assumptions making this option acceptable");
  query->add_option("--mode", mode, "Compile mode for policies")->check(CLI::IsMember({"basic", "advanced"}));
  query->add_option("--registry", registry, "Registry directory (default: $ARBITER_REGISTRY)");
  auto* json_flag = query->add_flag("--json", as_json, "Full response as JSON");
  query->add_flag("--text", as_text, "Explanations as text (default)")->excludes(json_flag);

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API over a registry directory");
  serve->add_option("--registry", registry, "Registry directory (default: $ARBITER_REGISTRY)");
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--bind", bind_addr, "Bind address");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compile) {
      const auto doc = arbiter::parse_policy(read_file(file));
      const auto theory = arbiter::compile_policy(doc, mode_of(mode));
      const std::string text = arbiter::render_theory(theory);
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream(out_path, std::ios::binary) << text;
      }
      print_diagnostics(arbiter::validate_theory(theory), file);
      return 0;
    }

    if (*check) {
      std::vector<arbiter::Diagnostic> diags;
      try {
        arbiter::Theory theory = ends_with(file, ".sbp")
                                     ? arbiter::compile_policy(arbiter::parse_policy(read_file(file)), mode_of(mode))
                                     : arbiter::parse_theory(read_file(file));
        diags = arbiter::validate_theory(theory);
      } catch (const arbiter::Error& e) {
        diags.push_back(e.diagnostic());
      }
      if (as_json) std::cout << arbiter::codec::to_json(diags).dump(2) << "\n";
      print_diagnostics(diags, file);
      return arbiter::has_errors(diags) ? 1 : 0;
    }

    if (*reg) {
      arbiter::Registry registry_dir(registry);
      auto req = request_for(file, mode);
      req.name = name;
      const auto rec = registry_dir.register_application(app_id, req);
      std::cout << rec->app_id << " revision " << rec->revision << "\n";
      print_diagnostics(arbiter::validate_theory(rec->theory), file);
      return 0;
    }

    if (*meta) {
      const auto rec = resolve(target, mode, registry);
      std::cout << arbiter::codec::to_json(rec.metadata).dump(2) << "\n";
      return 0;
    }

    if (*query) {
      const auto rec = resolve(target, mode, registry);
      json request{{"facts", facts}, {"bindings", json::object()}};
      for (const auto& b : binds) {
        const auto eq = b.find('=');
        if (eq == std::string::npos || eq == 0) {
          throw arbiter::Error(arbiter::Code::InvalidRequest, "--bind expects name=value, got '" + b + "'");
        }
        auto& slot = request["bindings"][b.substr(0, eq)];
        if (slot.is_null()) slot = json::array();
        slot.push_back(b.substr(eq + 1));
      }
      if (!abduce.empty()) request["abduce_for"] = abduce;
      const json response = arbiter::run_query(rec, request);
      std::cout << (as_json ? response.dump(2) + "\n" : text_of(response));
      return 0;
    }

    if (*serve) {
      arbiter::Registry registry_dir(registry);
      arbiter::Service service(registry_dir);
      arbiter::HttpServer server(service);
      const int bound = server.bind(bind_addr, port);
      running_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "serving " << registry_dir.list().size() << " application(s) from " << registry << " on http://"
                << bind_addr << ":" << bound << "\n";
      server.run();
      running_server = nullptr;
      return 0;
    }
  } catch (const arbiter::Error& e) {
    return report(e, file.empty() ? target : file, as_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
