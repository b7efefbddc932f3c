// Command-line front end: quotient, spectrum, verify, example, rep.
#include <iostream>

#include <CLI11.hpp>

#include "qg/commands.hpp"

int main(int argc, char** argv) {
  using namespace qg::cli;
  CLI::App app{"Quotient quantum graphs and spectral verification"};
  app.require_subcommand(1);

  QuotientArgs q;
  auto* quotient = app.add_subcommand("quotient", "build the quotient graph for a representation");
  quotient->add_option("--graph", q.graph)->required();
  quotient->add_option("--action", q.action)->required();
  quotient->add_option("--rep", q.rep)->required();
  quotient->add_option("--theta", q.theta, "rotate the global basis of a 2-dim rep");
  quotient->add_flag("--split-vertices", q.split_vertices);
  quotient->add_option("--out", q.out)->required();

  SpectrumArgs s;
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues k up to kmax");
  spectrum->add_option("--graph", s.graph)->required();
  spectrum->add_option("--kmax", s.k_max)->required()->check(CLI::PositiveNumber);
  spectrum->add_option("--scan-step", s.scan_step)->check(CLI::NonNegativeNumber);
  spectrum->add_option("--tol", s.tol)->check(CLI::PositiveNumber);
  spectrum->add_option("--out", s.out)->required();

  VerifyArgs v;
  auto* verify = app.add_subcommand("verify", "compare the spectra of two graphs");
  verify->add_option("--graph-a", v.graph_a)->required();
  verify->add_option("--graph-b", v.graph_b)->required();
  verify->add_option("--kmax", v.k_max)->required()->check(CLI::PositiveNumber);
  verify->add_option("--tol", v.tol)->required()->check(CLI::PositiveNumber);
  verify->add_option("--report", v.report, "write the full JSON report here");

  ExampleArgs e;
  auto* example = app.add_subcommand("example", "write a built-in example bundle");
  example->add_option("name", e.name)->required()->check(CLI::IsMember({"square-d4", "interval-z2", "ygraph"}));
  example->add_option("--a", e.a)->check(CLI::PositiveNumber);
  example->add_option("--b", e.b)->check(CLI::PositiveNumber);
  example->add_option("--c", e.c)->check(CLI::PositiveNumber);
  example->add_option("--l", e.l)->check(CLI::PositiveNumber);
  example->add_option("--theta", e.theta);
  example->add_option("--lengths", e.lengths)->delimiter(',')->expected(3);
  example->add_option("--out", e.out)->required();

  RepArgs r;
  auto* rep = app.add_subcommand("rep", "representation utilities");
  rep->add_option("action", r.action)->required()->check(CLI::IsMember({"induce", "restrict", "check-iso", "character"}));
  rep->add_option("--rep", r.rep)->required();
  rep->add_option("--other", r.other, "second rep for check-iso");
  rep->add_option("--elements", r.elements, "subgroup elements for restrict")->delimiter(',');
  rep->add_option("--tol", r.tol);
  rep->add_option("--out", r.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kPass : kInputError;
  }

  return guarded([&] {
    if (*quotient) return cmd_quotient(q, std::cout);
    if (*spectrum) return cmd_spectrum(s, std::cout);
    if (*verify) return cmd_verify(v, std::cout);
    if (*example) return cmd_example(e, std::cout);
    return cmd_rep(r, std::cout);
  }, std::cerr);
}
