#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>

#include "helpers.hpp"
#include "qg/builtin.hpp"
#include "qg/error.hpp"
#include "qg/io.hpp"

using namespace qg;
using io::Json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qg-io-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

bool same_graph(const QuantumGraph& a, const QuantumGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  for (EdgeId e = 0; e < a.edge_count(); ++e) {
    const auto &x = a.edge(e), &y = b.edge(e);
    if (x.source != y.source || x.target != y.target || x.length != y.length) return false;
  }
  for (VertexId v = 0; v < a.vertex_count(); ++v) {
    const auto &x = a.vertex(v), &y = b.vertex(v);
    if (x.edge_order != y.edge_order) return false;
    if (x.condition.a != y.condition.a || x.condition.b != y.condition.b) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("canonical dump") {
  const Json j = Json::parse(R"({"b": [1.0, 2, 0.1], "a": {"y": 3.0, "x": [[1, 2, 3], [4, 5, 6]]}, "c": []})");
  const std::string s = io::canonical_dump(j);
  CHECK(s ==
        "{\n"
        "  \"a\": {\n"
        "    \"x\": [\n"
        "      [1, 2, 3],\n"
        "      [4, 5, 6]\n"
        "    ],\n"
        "    \"y\": 3.0\n"
        "  },\n"
        "  \"b\": [1.0, 2, 0.10000000000000001],\n"
        "  \"c\": []\n"
        "}\n");
  // floats survive a round trip bit for bit
  const Json k = Json::parse(io::canonical_dump(Json{{"v", std::numbers::pi / 7}}));
  CHECK(k.at("v").get<double>() == std::numbers::pi / 7);
  CHECK_THROWS_AS(io::canonical_dump(Json{{"v", std::nan("")}}), Error);
}

TEST_CASE("matrices and complex numbers") {
  const CMatrix m = testing::rows({{1, Complex(0, -2)}, {0.25, Complex(1e-300, 3)}});
  CHECK(io::matrix_from_json(io::matrix_to_json(m)) == m);
  CHECK(io::matrix_from_json(Json::array(), 3).cols() == 3);
  CHECK(io::matrix_from_json(Json::array(), 3).rows() == 0);
  CHECK_THROWS_AS(io::complex_from_json(Json::array({1.0})), Error);
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse("[[[1, 0]], [[1, 0], [2, 0]]]")), Error);
}

TEST_CASE("round trips") {
  const auto b = builtin::square_d4();
  SUBCASE("group") {
    const GroupPtr g = io::group_from_json(io::group_to_json(*b.group));
    CHECK(g->order() == 8);
    CHECK(g->table() == b.group->table());
    CHECK(g->names() == b.group->names());
  }
  SUBCASE("graph, twice") {
    const Json once = io::graph_to_json(b.action.graph());
    const QuantumGraph g = io::graph_from_json(once);
    CHECK(same_graph(g, b.action.graph()));
    CHECK(io::canonical_dump(io::graph_to_json(g)) == io::canonical_dump(once));
  }
  SUBCASE("rep") {
    const Representation& r = b.rep("R2dim");
    const Representation back = io::rep_from_json(io::rep_to_json(r, "group.json"), b.group);
    for (Element x = 0; x < 8; ++x) CHECK(back(x) == r(x));
    const Representation& h = b.rep("R1");
    const Representation hb = io::rep_from_json(io::rep_to_json(h, "group.json"), b.group);
    CHECK(hb.domain().elements() == h.domain().elements());
  }
  SUBCASE("action") {
    const Json j = io::action_to_json(b.action, "group.json", "graph.json");
    const GraphAction a = io::action_from_json(j, b.group, b.action.graph());
    for (Element x = 0; x < 8; ++x)
      for (EdgeId e = 0; e < a.graph().edge_count(); ++e) {
        CHECK(a.edge_image(x, e) == b.action.edge_image(x, e));
        CHECK(a.flips(x, e) == b.action.flips(x, e));
      }
  }
  SUBCASE("spectrum") {
    Spectrum s;
    s.k_max = 5.0;
    s.zero_mode_multiplicity = 1;
    s.entries = {{1.25, 1}, {std::numbers::pi, 2}};
    s.near_misses = {{2.0, 1e-6}};
    s.warnings = {"w"};
    const Spectrum t = io::spectrum_from_json(io::spectrum_to_json(s));
    CHECK(t.entries.size() == 2);
    CHECK(t.entries[1].k == std::numbers::pi);
    CHECK(t.entries[1].multiplicity == 2);
    CHECK(t.zero_mode_multiplicity == 1);
    CHECK(t.near_misses.size() == 1);
    CHECK(io::spectrum_csv(s) ==
          "k,lambda,multiplicity\n0.0,0.0,1\n1.25,1.5625,1\n3.1415926535897931,9.869604401089358,2\n");
  }
}

TEST_CASE("graph files with named conditions") {
  const Json j = Json::parse(R"({
    "vertices": [{"id": 0, "condition": "dirichlet"}, {"id": 1, "condition": "neumann"},
                 {"id": 2, "condition": "neumann"}],
    "edges": [{"id": 0, "source": 0, "target": 1, "length": 1.5},
              {"id": 1, "source": 1, "target": 2, "length": 0.5}]})");
  const QuantumGraph g = io::graph_from_json(j);
  CHECK(g.vertex(1).edge_order == std::vector<EdgeId>{0, 1});
  CHECK(g.vertex(0).condition.a == standard_condition(StandardCondition::Dirichlet, 1).a);
  Json bad = j;
  bad["vertices"][0]["condition"] = "robin";
  CHECK_THROWS_AS(io::graph_from_json(bad), Error);
  bad = j;
  bad["edges"][0].erase("length");
  CHECK_THROWS(io::graph_from_json(bad));
}

TEST_CASE("loader resolves references and shares groups") {
  const fs::path dir = scratch("loader");
  const auto b = builtin::square_d4();
  io::write_json(dir / "group.json", io::group_to_json(*b.group));
  io::write_json(dir / "graph.json", io::graph_to_json(b.action.graph()));
  io::write_json(dir / "action.json", io::action_to_json(b.action, "group.json", "graph.json"));
  io::write_json(dir / "rep.json", io::rep_to_json(b.rep("E"), "group.json"));
  // an inline copy of the group must resolve to the same instance
  io::write_json(dir / "rep-inline.json", io::rep_to_json(b.rep("A2"), io::group_to_json(*b.group)));

  io::Loader loader;
  const GraphAction a = loader.action(dir / "action.json");
  const Representation e = loader.rep(dir / "rep.json");
  const Representation a2 = loader.rep(dir / "rep-inline.json");
  CHECK(a.group().get() == e.group().get());
  CHECK(a2.group().get() == e.group().get());

  std::ofstream(dir / "broken.json") << "{ not json";
  CHECK_THROWS(loader.graph(dir / "broken.json"));
  CHECK_THROWS(loader.graph(dir / "missing.json"));
  fs::remove_all(dir);
}
