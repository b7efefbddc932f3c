#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <set>

#include "helpers.hpp"
#include "qg/builtin.hpp"
#include "qg/error.hpp"
#include "qg/quotient.hpp"
#include "qg/spectral.hpp"

using namespace qg;
using testing::rows;
using testing::rows_deviation;

namespace {

const double kHalfRoot3 = std::sqrt(3.0) / 2;

VertexLocal swapped_pair(int d, int d_mu, Element g2) {
  VertexLocal l;
  l.n = 2;
  l.d = d;
  l.nu = {0, 0};
  l.mu = {0};
  l.fixed_dims = {d_mu};
  l.witnesses = {0, g2};
  return l;
}

std::vector<AdaptedBasis> identity_bases(int count, int d) {
  return std::vector<AdaptedBasis>(count, AdaptedBasis{CMatrix::Identity(d, d), d, CMatrix::Identity(d, d)});
}

const VertexCondition& neumann2() {
  static const VertexCondition c = standard_condition(StandardCondition::Neumann, 2);
  return c;
}

Spectrum spectrum_of(const QuantumGraph& g, double k_max) { return find_spectrum(g, k_max); }

}  // namespace

TEST_CASE("theta matrices") {
  VertexLocal v3;
  v3.n = 3;
  v3.d = 1;
  v3.nu = {0, 1, 2};
  v3.mu = {0, 1, 2};
  v3.fixed_dims = {1, 1, 1};
  v3.witnesses = {0, 0, 0};
  CHECK((build_theta(v3) - CMatrix::Identity(3, 3)).norm() == 0.0);
  CHECK((build_theta(swapped_pair(1, 1, 4)) - rows({{1}, {1}})).norm() == 0.0);
  const CMatrix t = build_theta(swapped_pair(2, 2, 7));
  CHECK((t - rows({{1, 0}, {0, 1}, {1, 0}, {0, 1}})).norm() == 0.0);
  // a dead orbit contributes no columns
  CHECK(build_theta(swapped_pair(2, 1, 7)).cols() == 1);
  CHECK(build_theta(swapped_pair(1, 0, 4)).cols() == 0);
  VertexLocal bad = v3;
  bad.nu = {0, 1, 5};
  CHECK_THROWS_AS(build_theta(bad), Error);
}

TEST_CASE("gothic matrices") {
  const GroupPtr g = builtin::d4();
  VertexLocal l;
  l.n = 2;
  l.d = 1;
  l.nu = {0, 1};
  l.mu = {0, 1};
  l.fixed_dims = {1, 1};
  l.witnesses = {0, 1};
  const CMatrix one = CMatrix::Identity(1, 1);
  const CMatrix got = build_gothic(l, builtin::r3(g), one, identity_bases(2, 1));
  CHECK((got - rows({{1, 0}, {0, Complex(0, -1)}})).norm() < 1e-15);

  const CMatrix v5 = build_gothic(swapped_pair(1, 1, 4), builtin::r1(g), one, identity_bases(1, 1));
  CHECK((v5 - rows({{1, 0}, {0, -1}})).norm() < 1e-15);

  const Representation p = builtin::r2dim(g, std::numbers::pi / 3);
  const CMatrix v4 = build_gothic(swapped_pair(2, 2, 7), p, CMatrix::Identity(2, 2), identity_bases(1, 2));
  CHECK((v4.block(2, 2, 2, 2) - rows({{kHalfRoot3, -0.5}, {-0.5, -kHalfRoot3}})).norm() < 1e-15);
  CHECK((v4.block(0, 0, 2, 2) - CMatrix::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("vertex condition fixtures") {
  const GroupPtr g = builtin::d4();
  const Representation p = builtin::r2dim(g, std::numbers::pi / 3);
  const CMatrix id2 = CMatrix::Identity(2, 2);

  SUBCASE("v4 with the diagonal reflection") {
    const VertexCondition pre = build_vertex_condition(swapped_pair(2, 2, 7), neumann2(), p, id2, identity_bases(1, 2));
    CHECK(rows_deviation(pre.a, rows({{1 - kHalfRoot3, 0.5}, {0.5, 1 + kHalfRoot3}, {0, 0}, {0, 0}})) < 1e-12);
    CHECK(rows_deviation(pre.b, rows({{0, 0}, {0, 0}, {1 + kHalfRoot3, -0.5}, {-0.5, 1 - kHalfRoot3}})) < 1e-12);
    const VertexCondition red = reduce_rows(pre);
    CHECK(rows_deviation(hcat(red.a, red.b),
                         rows({{1 - kHalfRoot3, 0.5, 0, 0}, {0, 0, -1 - kHalfRoot3, 0.5}})) < 1e-12);
  }
  SUBCASE("v1 and v2 with the axis reflection") {
    const VertexCondition pre = build_vertex_condition(swapped_pair(2, 2, 6), neumann2(), p, id2, identity_bases(1, 2));
    CHECK(rows_deviation(pre.a, rows({{1.5, kHalfRoot3}, {kHalfRoot3, 0.5}, {0, 0}, {0, 0}})) < 1e-12);
    CHECK(rows_deviation(pre.b, rows({{0, 0}, {0, 0}, {0.5, -kHalfRoot3}, {-kHalfRoot3, 1.5}})) < 1e-12);
    const VertexCondition red = reduce_rows(pre);
    CHECK(rows_deviation(hcat(red.a, red.b), rows({{1.5, kHalfRoot3, 0, 0}, {0, 0, -0.5, kHalfRoot3}})) < 1e-12);
  }
  SUBCASE("Dirichlet vertex from R1") {
    const VertexCondition pre = build_vertex_condition(swapped_pair(1, 1, 4), neumann2(), builtin::r1(g),
                                                       CMatrix::Identity(1, 1), identity_bases(1, 1));
    CHECK((pre.a - rows({{2}, {0}})).norm() < 1e-15);
    CHECK(pre.b.norm() < 1e-15);
    const VertexCondition red = reduce_rows(pre);
    CHECK(red.a.rows() == 1);
    CHECK(rows_deviation(hcat(red.a, red.b), rows({{2, 0}})) < 1e-12);
  }
  SUBCASE("phase vertex from R3") {
    VertexLocal l;
    l.n = 2;
    l.d = 1;
    l.nu = {0, 1};
    l.mu = {0, 1};
    l.fixed_dims = {1, 1};
    l.witnesses = {0, 1};
    const VertexCondition red = reduce_rows(build_vertex_condition(
        l, neumann2(), builtin::r3(g), CMatrix::Identity(1, 1), identity_bases(2, 1)));
    const Complex i(0, 1);
    CHECK(rows_deviation(hcat(red.a, red.b), rows({{1, i, 0, 0}, {0, 0, 1, -i}})) < 1e-12);
  }
  SUBCASE("row reduction edge cases") {
    const VertexCondition zero{CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)};
    CHECK(reduce_rows(zero).a.rows() == 0);
    const VertexCondition n = neumann2();
    const VertexCondition r = reduce_rows(n);
    CHECK(r.a.rows() == 2);
    CHECK(rows_deviation(hcat(r.a, r.b), hcat(n.a, n.b)) < 1e-15);
  }
}

TEST_CASE("the R3 phase vertex appears in a subdivided square-d4 quotient") {
  const auto bundle = builtin::square_d4();
  const GroupPtr g = bundle.group;
  const GraphAction a3 = bundle.action.restricted(builtin::h3(g));
  // split the ring edges so that degree-2 vertices with trivial stabilizer appear
  const GraphAction sub = subdivide_orbits(a3, {0});
  const QuantumGraph& sg = sub.graph();
  const OrbitData d = orbits(sub);
  // the midpoint of ring edge 0 and its two halves
  const VertexId mid = 24;
  REQUIRE(sg.degree(mid) == 2);
  const EdgeId first = sg.vertex(mid).edge_order[0], second = sg.vertex(mid).edge_order[1];
  RepresentativeOverrides ov;
  ov.vertices[d.vertex_orbit_of[mid]] = mid;
  ov.edges[d.edge_orbit_of[first]] = first;
  ov.edges[d.edge_orbit_of[second]] = sub.edge_image(g->inv(1), second);  // σ carries it back
  QuotientOptions opts;
  opts.overrides = ov;
  const QuotientResult q = build_quotient(make_recipe(sub, builtin::r3(g), opts));
  const Complex i(0, 1);
  bool found = false;
  for (const auto& info : q.vertices) {
    if (info.representative != mid) continue;
    found = true;
    CHECK(info.local.witnesses == std::vector<Element>{0, 1});
    const auto& c = q.graph.vertex(info.id).condition;
    CHECK(rows_deviation(hcat(c.a, c.b), rows({{1, i, 0, 0}, {0, 0, 1, -i}})) < 1e-12);
  }
  CHECK(found);
}

TEST_CASE("quotient structure") {
  SUBCASE("trivial group and trivial rep reproduce the graph") {
    const auto y = builtin::ygraph({1.0, 1.3, 0.7});
    const QuotientResult q = build_quotient(make_recipe(y.action, y.rep("trivial")));
    CHECK(q.graph.edge_count() == 3);
    CHECK(q.graph.vertex_count() == 4);
    for (EdgeId e = 0; e < 3; ++e) CHECK(q.graph.edge(e).length == y.action.graph().edge(e).length);
    CHECK(classify(q).kind == QuotientClass::Generalized);
  }
  SUBCASE("Z2 folding of an interval") {
    const auto z = builtin::interval_z2(1.0);
    const QuotientResult even = build_quotient(make_recipe(z.action, z.rep("trivial")));
    const QuotientResult odd = build_quotient(make_recipe(z.action, z.rep("sign")));
    REQUIRE(even.graph.edge_count() == 1);
    REQUIRE(odd.graph.edge_count() == 1);
    CHECK(even.graph.edge(0).length == 1.0);
    CHECK(classify(even).kind == QuotientClass::ProperExact);
    CHECK(classify(odd).kind == QuotientClass::ProperExact);
    // center: Neumann for even, Dirichlet for odd
    const auto& ce = even.graph.vertex(0).condition;
    const auto& co = odd.graph.vertex(0).condition;
    CHECK(rows_deviation(hcat(ce.a, ce.b), rows({{0, 1}})) < 1e-12);
    CHECK(rows_deviation(hcat(co.a, co.b), rows({{1, 0}})) < 1e-12);
  }
  SUBCASE("square-d4 quotients have the predicted shape") {
    const auto b = builtin::square_d4();
    const GroupPtr g = b.group;
    for (const auto& [name, rep] : b.reps) {
      const QuotientRecipe recipe = make_recipe(b.action, rep);
      const QuotientResult q = build_quotient(recipe);
      CHECK(classify(q).kind == QuotientClass::ProperExact);
      // degree law
      for (const auto& info : q.vertices)
        CHECK(q.graph.degree(info.id) ==
              predicted_degree(recipe.action, rep, info.representative));
      // length law: Σ d_i l_i
      double expected = 0.0;
      for (size_t i = 0; i < recipe.orbits.edge_orbits.size(); ++i)
        expected += recipe.edge_bases[i].fixed_dim *
                    recipe.action.graph().edge(recipe.orbits.edge_orbits[i].representative).length;
      CHECK(q.graph.total_length() == doctest::Approx(expected).epsilon(1e-14));
    }
    // regular rep: total length of Γ
    const Representation reg = regular_rep(Subgroup::whole(g));
    const QuotientResult q = build_quotient(make_recipe(b.action, reg));
    CHECK(q.graph.total_length() == doctest::Approx(b.action.graph().total_length()).epsilon(1e-14));
  }
  SUBCASE("dead edges under R1") {
    // the interval reflection fixes the middle edge in this path: 0 - 1 - 2 - 3
    const GroupPtr z2 = make_cyclic(2);
    const QuantumGraph path = make_standard_graph(4, {{0, 0, 1, 1.0}, {1, 1, 2, 0.5}, {2, 3, 2, 1.0}});
    const GraphAction a(z2, path, {{{0, 1, 2, 3}, {0, 1, 2}, {0, 0, 0}}, {{3, 2, 1, 0}, {2, 1, 0}, {0, 1, 0}}});
    CHECK(validate_action(a).ok);
    const Representation sign = Representation::from_function(
        Subgroup::whole(z2), 1, [](Element x) { return CMatrix::Constant(1, 1, x == 0 ? 1.0 : -1.0); });
    const QuotientRecipe r = make_recipe(a, sign);
    const QuotientResult q = build_quotient(r);
    CHECK(classify(q).kind == QuotientClass::ProperExact);
    // after dummy insertion the middle edge halves are swapped, so nothing is dead, but
    // a rep on the reflection's stabilizer would kill them:
    CHECK(q.graph.total_length() == doctest::Approx(1.25));
  }
}

TEST_CASE("predicted degrees") {
  const auto b = builtin::square_d4();
  const GroupPtr g = b.group;
  const QuantumGraph& gr = b.action.graph();
  const OrbitData d = orbits(b.action);
  for (const auto& orbit : d.vertex_orbits) {
    const VertexId v = orbit.representative;
    // trivial rep: one edge per stabilizer orbit on the incident edges
    std::vector<EdgeId> inc = gr.incident_edges(v);
    std::set<std::set<EdgeId>> classes;
    for (EdgeId e : inc) {
      std::set<EdgeId> c;
      for (Element s : orbit.stabilizer.elements()) c.insert(b.action.edge_image(s, e));
      classes.insert(c);
    }
    CHECK(predicted_degree(b.action, b.rep("A1"), v) == static_cast<int>(classes.size()));
    // Σ d_ρ deg_ρ over the irreps is the degree for C[G]: |G|/|G_e| per class
    int total = 0, expected = 0;
    for (const auto& [name, rep] : builtin::d4_irreps(g))
      total += rep.dim() * predicted_degree(b.action, rep, v);
    for (const auto& c : classes) {
      int fix = 0;
      for (Element x = 0; x < g->order(); ++x) fix += b.action.edge_image(x, *c.begin()) == *c.begin();
      expected += g->order() / fix;
    }
    CHECK(total == expected);
  }
}

TEST_CASE("basis choice and the transposition of the 𝔊 blocks") {
  const auto b = builtin::square_d4();
  const GroupPtr g = b.group;
  const double k_max = 6.0;
  const Spectrum ref = spectrum_of(build_quotient(make_recipe(b.action, b.rep("R1"))).graph, k_max);
  REQUIRE(ref.count() > 5);
  // a unitary realization whose reflection matrices are not symmetric
  const QuotientResult qu = build_quotient(make_recipe(b.action, b.rep("R2unitary")));
  CHECK(compare_spectra(ref, spectrum_of(qu.graph, k_max), 1e-7).pass);
  // a non-orthogonal global basis
  QuotientOptions opts;
  opts.basis = rows({{1.0, 0.4}, {0.2, 1.3}});
  const QuotientResult qb = build_quotient(make_recipe(b.action, b.rep("E"), opts));
  CHECK(compare_spectra(ref, spectrum_of(qb.graph, k_max), 1e-7).pass);
}

TEST_CASE("vertex splitting is spectrally neutral") {
  const auto b = builtin::square_d4(1.0, 0.62, 0.41, 0.0);
  const QuotientResult q = build_quotient(make_recipe(b.action, b.rep("R2dim")));
  const QuotientResult s = split_vertices(q);
  CHECK(s.graph.vertex_count() > q.graph.vertex_count());
  CHECK(s.graph.edge_count() == q.graph.edge_count());
  CHECK(classify(s).kind == QuotientClass::ProperExact);
  CHECK(compare_spectra(spectrum_of(q.graph, 6.0), spectrum_of(s.graph, 6.0), 1e-8).pass);
}

TEST_CASE("recipe errors") {
  const auto b = builtin::square_d4();
  const auto z = builtin::interval_z2();
  CHECK_THROWS_AS(make_recipe(b.action, z.rep("sign")), Error);
  QuotientOptions opts;
  opts.basis = CMatrix::Zero(2, 2);
  CHECK_THROWS_AS(make_recipe(b.action, b.rep("E"), opts), Error);
}

namespace {

// S3 acting on a tripod whose arm ends carry swapped leaf pairs. Rotations
// act on the centre's edges, so 𝔊 sees witnesses of order 3.
builtin::ExampleBundle s3_tripod() {
  const GroupPtr g = make_dihedral(3);
  const double c = std::cos(2 * std::numbers::pi / 3), s = std::sin(2 * std::numbers::pi / 3);
  std::vector<std::array<double, 4>> mats;
  for (int k = 0; k < 3; ++k) {
    const double ck = std::cos(2 * std::numbers::pi * k / 3), sk = std::sin(2 * std::numbers::pi * k / 3);
    mats.push_back({ck, -sk, sk, ck});
  }
  for (int k = 0; k < 3; ++k) mats.push_back({mats[k][0], mats[k][1], -mats[k][2], -mats[k][3]});
  std::vector<std::array<double, 2>> pos{{0, 0}};
  std::vector<EdgeRecord> edges;
  std::array<double, 2> arm{1, 0}, up{1.4, 0.3}, down{1.4, -0.3};
  const auto turn = [&](std::array<double, 2> p) { return std::array<double, 2>{c * p[0] - s * p[1], s * p[0] + c * p[1]}; };
  for (int k = 0; k < 3; ++k) {
    const int a = static_cast<int>(pos.size());
    pos.insert(pos.end(), {arm, up, down});
    const int e = static_cast<int>(edges.size());
    edges.push_back({e, 0, a, 1.0});
    edges.push_back({e + 1, a, a + 1, 0.6});
    edges.push_back({e + 2, a, a + 2, 0.6});
    arm = turn(arm);
    up = turn(up);
    down = turn(down);
  }
  const QuantumGraph graph = make_standard_graph(static_cast<int>(pos.size()), edges);
  builtin::ExampleBundle out{"s3-tripod", g, builtin::geometric_action(g, graph, pos, mats), {}, {}};
  const Subgroup whole = Subgroup::whole(g);
  out.reps.push_back({"trivial", trivial_rep(whole)});
  out.reps.push_back({"sign", Representation::from_function(whole, 1, [](Element x) {
                        return CMatrix::Constant(1, 1, x < 3 ? 1.0 : -1.0);
                      })});
  const Representation plane = Representation::from_function(whole, 2, [&](Element x) {
    return rows({{mats[x][0], mats[x][1]}, {mats[x][2], mats[x][3]}});
  });
  out.reps.push_back({"plane", plane});
  out.reps.push_back({"skewed", change_basis(plane, rows({{1.0, Complex(0.4, 0.3)}, {0.2, 1.3}}))});
  return out;
}

}  // namespace

TEST_CASE("regular decomposition with order-3 witnesses and a skewed basis") {
  const auto b = s3_tripod();
  REQUIRE(validate_action(b.action).ok);
  const double k_max = 10.0;
  const Spectrum full = spectrum_of(b.action.graph(), k_max);
  const Spectrum triv = spectrum_of(build_quotient(make_recipe(b.action, b.rep("trivial"))).graph, k_max);
  const Spectrum sign = spectrum_of(build_quotient(make_recipe(b.action, b.rep("sign"))).graph, k_max);
  // ρ(g⁻¹) placed untransposed only agrees with this for orthogonal matrices
  for (const char* name : {"plane", "skewed"}) {
    CAPTURE(name);
    const Spectrum two = spectrum_of(build_quotient(make_recipe(b.action, b.rep(name))).graph, k_max);
    const auto r = compare_spectra(full, spectrum_sum({{&triv, 1}, {&sign, 1}, {&two, 2}}, 1e-7), 1e-7);
    CHECK(r.pass);
    CHECK_FALSE(r.zero_mode_mismatch);
  }
}
