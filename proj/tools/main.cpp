#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "setstab/spec_doc.hpp"

namespace {

setstab::ReportFormat parse_format(const std::string& name) {
  if (name == "text") return setstab::ReportFormat::Text;
  if (name == "jsonlines") return setstab::ReportFormat::JsonLines;
  throw CLI::ValidationError("--format must be text or jsonlines");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact stability checks for set-valued maps over finite universes"};
  app.require_subcommand(0, 1);

  std::string format = "text";
  bool fixtures = false;
  std::size_t enum_ceiling = 0;
  std::size_t n_max = 0;
  app.add_option("--format", format, "Report format: text or jsonlines")
      ->check(CLI::IsMember({"text", "jsonlines"}));
  app.add_flag("--fixtures", fixtures, "Run the built-in example suite");
  app.add_option("--enum-ceiling", enum_ceiling,
                 "Largest family extension an enumerating check may expand");
  app.add_option("--nmax", n_max, "Default per-side loop bound for small-gain queries");

  std::string spec_path;
  CLI::App* check = app.add_subcommand("check", "Run the queries of a declaration file");
  check->add_option("file", spec_path, "Declaration file (JSON)")->required();
  check->fallthrough();  // accept the top-level flags after the subcommand

  CLI11_PARSE(app, argc, argv);

  setstab::Limits limits;
  if (enum_ceiling) limits.enum_ceiling = enum_ceiling;

  try {
    if (fixtures) {
      setstab::Report report = setstab::run_fixture_report(limits);
      std::cout << setstab::emit_report(report, parse_format(format));
      return setstab::report_exit_code(report);
    }
    if (check->parsed()) {
      std::ifstream in(spec_path);
      if (!in) {
        std::cerr << "cannot open " << spec_path << "\n";
        return 2;
      }
      std::stringstream buffer;
      buffer << in.rdbuf();
      setstab::SpecDocument doc = setstab::parse_spec(buffer.str());
      if (n_max)
        for (auto& q : doc.queries)
          if (q.n_max == 0) q.n_max = n_max;
      setstab::Report report = setstab::run_queries(doc, limits);
      std::cout << setstab::emit_report(report, parse_format(format));
      return setstab::report_exit_code(report);
    }
    std::cout << app.help();
    return 0;
  } catch (const setstab::SpecError& e) {
    if (e.line)
      std::cerr << "parse error at line " << e.line << ", column " << e.column << ": " << e.what()
                << "\n";
    else
      std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
