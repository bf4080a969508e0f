#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rieszkit/casebook.hpp"
#include "rieszkit/commands.hpp"

using namespace rieszkit;

namespace {

int exit_code(const Report& r) { return r.refuted ? 1 : 0; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rieszkit: regular operators between vector lattices, decided with certificates"};
  std::string command, spec_path;
  std::vector<std::string> words;
  CommandOptions opts;
  bool json = false, markdown = false;

  app.add_option("command", command,
                 "check | positive-part | project-oc | witness-pervasive | classify | casebook | oracle | run | print | list")
      ->required();
  app.add_option("args", words, "words after the command, e.g. 'order_continuous' or a casebook name");
  app.add_option("--spec", spec_path, "spec file declaring spaces and operators");
  app.add_option("--op", opts.op, "operator name inside the spec file (default: the first)");
  app.add_option("--probe", opts.probe, "spot-check depth for symbolic certificates")->default_val(8);
  app.add_option("--seed", opts.seed, "seed for random demonstrations")->default_val(42);
  app.add_option("--level", opts.level, "truncation level for oracles")->default_val(8);
  app.add_option("--depth", opts.depth, "grid depth for the grid oracle")->default_val(3);
  app.add_option("--bound", opts.bound, "size bound for the dominating search")->default_val(6);
  app.add_option("--E", opts.e, "domain kind for classify (R^n, l0inf, c, CK, E_K, grid)");
  app.add_option("--F", opts.f, "codomain kind for classify");
  auto* json_flag = app.add_flag("--json", json, "emit JSON (default)");
  app.add_flag("--markdown", markdown, "emit markdown")->excludes(json_flag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto emit = [&](const std::vector<Report>& reports) {
    if (markdown) {
      for (std::size_t i = 0; i < reports.size(); ++i) std::cout << (i ? "\n" : "") << reports[i].to_markdown();
      return;
    }
    if (reports.size() == 1 && command != "run") {
      std::cout << reports.front().to_json().dump(2) << "\n";
      return;
    }
    Json all = Json::array();
    for (const auto& r : reports) all.push_back(r.to_json());
    std::cout << all.dump(2) << "\n";
  };

  try {
    std::optional<SpecFile> spec;
    if (!spec_path.empty()) spec = parse_spec(read_file(spec_path));
    const SpecFile* sp = spec ? &*spec : nullptr;

    if (command == "list") {
      std::cout << "casebook:";
      for (const auto& n : casebook_names()) std::cout << " " << n;
      std::cout << "\noracle:";
      for (const auto& n : oracle_names()) std::cout << " " << n;
      std::cout << "\n";
      return 0;
    }
    if (command == "print") {
      if (!sp) throw Error("print needs --spec FILE");
      std::cout << print_spec(*sp);
      return 0;
    }
    if (command == "run") {
      if (!sp) throw Error("run needs --spec FILE");
      auto reports = run_directives(*sp, opts);
      emit(reports);
      int code = 0;
      for (const auto& r : reports) code = std::max(code, exit_code(r));
      return code;
    }
    Report r = dispatch(command, words, sp, opts);
    emit({r});
    return exit_code(r);
  } catch (const UnsupportedHypothesis& e) {
    std::cerr << "unsupported hypothesis: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
