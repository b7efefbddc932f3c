#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "qg/io.hpp"

namespace fs = std::filesystem;
using qg::io::Json;

namespace {

const fs::path kDir = fs::temp_directory_path() / "qg-cli";

int run(const std::string& args) {
  const std::string cmd = std::string(QGRAPH_EXE) + " " + args + " > " + (kDir / "stdout.txt").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string p(const std::string& rel) { return (kDir / rel).string(); }

void setup() {
  static bool done = false;
  if (done) return;
  fs::remove_all(kDir);
  fs::create_directories(kDir);
  REQUIRE(run("example square-d4 --out " + p("ex")) == 0);
  REQUIRE(run("example interval-z2 --l 1.0 --out " + p("z2")) == 0);
  done = true;
}

}  // namespace

TEST_CASE("example bundles") {
  setup();
  for (const char* f : {"group.json", "graph.json", "action.json", "params.json", "rep-E.json", "rep-R1.json"})
    CHECK(fs::exists(kDir / "ex" / f));
  CHECK(run("example ygraph --lengths 1,1,0.7 --out " + p("y")) == 0);
  CHECK(run("example hexagon --out " + p("h")) == 2);
  CHECK(run("example square-d4 --a -1 --out " + p("h")) == 2);
}

TEST_CASE("quotient, spectrum and verify") {
  setup();
  const std::string base = "--graph " + p("ex/graph.json") + " --action " + p("ex/action.json");
  REQUIRE(run("quotient " + base + " --rep " + p("ex/rep-R1.json") + " --out " + p("q1")) == 0);
  REQUIRE(run("quotient " + base + " --rep " + p("ex/rep-E.json") + " --out " + p("qe")) == 0);
  REQUIRE(run("quotient " + base + " --rep " + p("ex/rep-R2dim.json") + " --theta 0.75 --split-vertices --out " +
              p("qt")) == 0);
  CHECK(fs::exists(kDir / "q1" / "provenance.json"));
  const Json prov = qg::io::read_json(kDir / "q1" / "provenance.json");
  CHECK(prov.contains("edges"));

  CHECK(run("spectrum --graph " + p("q1/graph.json") + " --kmax 4 --out " + p("s.csv")) == 0);
  std::ifstream csv(kDir / "s.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "k,lambda,multiplicity");
  CHECK(fs::exists(kDir / "s.json"));

  CHECK(run("verify --graph-a " + p("q1/graph.json") + " --graph-b " + p("qe/graph.json") +
            " --kmax 8 --tol 1e-7 --report " + p("report.json")) == 0);
  CHECK(qg::io::read_json(kDir / "report.json").at("pass").get<bool>());
  CHECK(run("verify --graph-a " + p("qt/graph.json") + " --graph-b " + p("qe/graph.json") + " --kmax 8 --tol 1e-7") ==
        0);

  // stretch one edge of the quotient: the spectra must separate
  Json g = qg::io::read_json(kDir / "q1" / "graph.json");
  g["edges"][0]["length"] = g["edges"][0]["length"].get<double>() * 1.01;
  qg::io::write_json(kDir / "perturbed.json", g);
  CHECK(run("verify --graph-a " + p("perturbed.json") + " --graph-b " + p("qe/graph.json") +
            " --kmax 8 --tol 1e-7") == 1);
}

TEST_CASE("folding and zero modes") {
  setup();
  const std::string base = "--graph " + p("z2/graph.json") + " --action " + p("z2/action.json");
  REQUIRE(run("quotient " + base + " --rep " + p("z2/rep-trivial.json") + " --out " + p("even")) == 0);
  REQUIRE(run("quotient " + base + " --rep " + p("z2/rep-sign.json") + " --out " + p("odd")) == 0);
  // Neumann vs Dirichlet at the fold: nπ against (n+1/2)π
  CHECK(run("verify --graph-a " + p("even/graph.json") + " --graph-b " + p("odd/graph.json") +
            " --kmax 5 --tol 1e-7") == 1);
}

TEST_CASE("error exits") {
  setup();
  CHECK(run("") != 0);
  CHECK(run("spectrum --graph " + p("nope.json") + " --kmax 3 --out " + p("x.csv")) == 2);
  CHECK(run("spectrum --graph " + p("ex/graph.json") + " --kmax -3 --out " + p("x.csv")) == 2);
  // rep and action on unrelated groups
  CHECK(run("quotient --graph " + p("ex/graph.json") + " --action " + p("ex/action.json") + " --rep " +
            p("z2/rep-sign.json") + " --out " + p("bad")) == 2);
  // an under-determined vertex is a solver failure
  Json g = qg::io::read_json(kDir / "z2" / "graph.json");
  g["vertices"][1]["A"] = Json::array();
  g["vertices"][1]["B"] = Json::array();
  qg::io::write_json(kDir / "under.json", g);
  CHECK(run("spectrum --graph " + p("under.json") + " --kmax 3 --out " + p("x.csv")) == 3);
}

TEST_CASE("rep utilities") {
  setup();
  CHECK(run("rep induce --rep " + p("ex/rep-R1.json") + " --out " + p("ind.json")) == 0);
  CHECK(run("rep check-iso --rep " + p("ind.json") + " --other " + p("ex/rep-E.json")) == 0);
  CHECK(run("rep check-iso --rep " + p("ex/rep-A1.json") + " --other " + p("ex/rep-E.json")) == 1);
  CHECK(run("rep restrict --rep " + p("ex/rep-E.json") + " --elements 0,2 --out " + p("res.json")) == 0);
  CHECK(run("rep restrict --rep " + p("ex/rep-E.json") + " --elements 0,1 --out " + p("res.json")) == 2);
  CHECK(run("rep character --rep " + p("ex/rep-E.json")) == 0);
}
