#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qg::cli {

namespace fs = std::filesystem;

enum Exit { kPass = 0, kVerifyFail = 1, kInputError = 2, kSolverFailure = 3 };

struct QuotientArgs {
  fs::path graph, action, rep, out;
  std::optional<double> theta;
  bool split_vertices = false;
};

struct SpectrumArgs {
  fs::path graph, out;
  double k_max = 10.0;
  double scan_step = 0.0;
  double tol = 1e-8;
};

struct VerifyArgs {
  fs::path graph_a, graph_b;
  double k_max = 10.0;
  double tol = 1e-7;
  std::optional<fs::path> report;
};

struct ExampleArgs {
  std::string name;
  double a = 1.0, b = 0.62, c = 0.41, l = 1.0;
  std::optional<double> theta;
  std::vector<double> lengths{1.0, 1.0, 0.7};
  fs::path out;
};

struct RepArgs {
  std::string action;  // induce, restrict, check-iso, character
  fs::path rep, other;
  std::optional<fs::path> out;
  std::vector<int> elements;
  double tol = 1e-9;
};

int cmd_quotient(const QuotientArgs& args, std::ostream& out);
int cmd_spectrum(const SpectrumArgs& args, std::ostream& out);
int cmd_verify(const VerifyArgs& args, std::ostream& out);
int cmd_example(const ExampleArgs& args, std::ostream& out);
int cmd_rep(const RepArgs& args, std::ostream& out);

/// Runs a command and turns exceptions into exit codes with a one-line JSON
/// error report on `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace qg::cli
