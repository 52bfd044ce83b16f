// atlas: enumeration, counting, tableau, verification, and pair analysis for
// the classification of right coideal subalgebras of the quantized enveloping
// algebras of type A_n.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "atlas/report.hpp"

namespace {

std::vector<int> parse_sequence(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ','))
    out.push_back(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"right coideal subalgebra atlas for quantum sl(n+1)"};
  app.require_subcommand(1);

  atlas::report::RunConfig cfg;
  if (const char* env = std::getenv("ATLAS_THREADS")) cfg.threads = std::atoi(env);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "rank (number of simple roots)");
    sub->add_option("--format", cfg.format, "output format: json, csv, or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--bound", cfg.bound, "total degree bound for symbolic checks")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    sub->add_flag("--multiparameter", cfg.multiparameter,
                  "independent parameters t_{i,i+1} instead of one q");
    sub->add_flag("--unicode", cfg.unicode, "unicode diagram glyphs");
    sub->add_option("--out", cfg.out, "write the report to a file");
  };

  CLI::App* borel = app.add_subcommand("borel", "list every coideal subalgebra of the Borel part");
  add_common(borel);

  CLI::App* tableau = app.add_subcommand("tableau", "the sixteen proper rows at rank 3");
  add_common(tableau);

  CLI::App* count = app.add_subcommand("count", "count coideal subalgebras");
  std::string which = "borel";
  count->add_option("which", which, "borel or full")->required();
  add_common(count);

  CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
  std::string suite;
  verify->add_option("suite", suite,
                     "identities, derivatives, omega, pbw, coideal, theorem26, "
                     "decode, double, sh, derm, consistency")
      ->required();
  add_common(verify);

  CLI::App* pair = app.add_subcommand("pair", "compatibility of a positive/negative wing pair");
  std::string tplus, tminus;
  bool symbolic = false;
  pair->add_option("theta", tplus, "positive-wing root sequence, e.g. 1,0")->required();
  pair->add_option("theta_neg", tminus, "negative-wing root sequence")->required();
  pair->add_flag("--symbolic", symbolic, "print the straightened generator cross-brackets");
  add_common(pair);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::ostringstream buffer;
  std::ostream* os = &std::cout;
  if (!cfg.out.empty()) os = &buffer;

  int rc = 2;
  try {
    if (borel->parsed()) rc = atlas::report::cmd_borel(cfg, *os, std::cerr);
    if (tableau->parsed()) rc = atlas::report::cmd_tableau(cfg, *os, std::cerr);
    if (count->parsed()) rc = atlas::report::cmd_count(cfg, which, *os, std::cerr);
    if (verify->parsed()) rc = atlas::report::cmd_verify(cfg, suite, *os, std::cerr);
    if (pair->parsed())
      rc = atlas::report::cmd_pair(cfg, parse_sequence(tplus), parse_sequence(tminus),
                                   symbolic, *os, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    if (!f) {
      std::cerr << "cannot open output file " << cfg.out << "\n";
      return 2;
    }
    f << buffer.str();
  }
  return rc;
}
