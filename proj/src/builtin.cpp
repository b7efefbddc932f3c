#include "qg/builtin.hpp"

#include <cmath>
#include <numbers>

#include "qg/error.hpp"

namespace qg::builtin {

namespace {

constexpr Element kTau = 4;

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

CMatrix scalar(Complex z) { return CMatrix::Constant(1, 1, z); }

// τ^x σ^a ↦ t^x s^a
Representation from_generators(const GroupPtr& g, const CMatrix& s, const CMatrix& t) {
  return Representation::from_function(Subgroup::whole(g), static_cast<int>(s.rows()),
                                       [&](Element x) {
    CMatrix m = CMatrix::Identity(s.rows(), s.rows());
    for (int i = 0; i < x % 4; ++i) m = m * s;
    return x >= kTau ? CMatrix(t * m) : m;
  });
}

Representation one_dim(const Subgroup& h, const std::map<Element, Complex>& values) {
  return Representation::from_function(h, 1, [&](Element x) {
    auto it = values.find(x);
    return scalar(it == values.end() ? Complex(1.0) : it->second);
  });
}

std::array<double, 4> plane_matrix(Element x) {
  // σ^a then τ: the point p goes to T R^a p
  const double angle = (x % 4) * std::numbers::pi / 2;
  const double c = std::round(std::cos(angle)), s = std::round(std::sin(angle));
  std::array<double, 4> m{c, -s, s, c};
  if (x >= kTau) m = {m[0], m[1], -m[2], -m[3]};
  return m;
}

std::array<double, 2> move_point(const std::array<double, 4>& m, const std::array<double, 2>& p) {
  return {m[0] * p[0] + m[1] * p[1], m[2] * p[0] + m[3] * p[1]};
}

bool close(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return std::abs(a[0] - b[0]) < 1e-9 && std::abs(a[1] - b[1]) < 1e-9;
}

}  // namespace

GroupPtr d4() { return make_dihedral(4); }

Subgroup h1(const GroupPtr& g) { return Subgroup(g, {0, 4, 6, 2}); }
Subgroup h2(const GroupPtr& g) { return Subgroup(g, {0, 5, 7, 2}); }
Subgroup h3(const GroupPtr& g) { return Subgroup(g, {0, 1, 2, 3}); }

Representation r1(const GroupPtr& g) { return one_dim(h1(g), {{4, -1.0}, {6, 1.0}, {2, -1.0}}); }
Representation r2(const GroupPtr& g) { return one_dim(h2(g), {{5, 1.0}, {7, -1.0}, {2, -1.0}}); }
Representation r3(const GroupPtr& g) {
  const Complex i(0.0, 1.0);
  return one_dim(h3(g), {{1, i}, {2, -1.0}, {3, -i}});
}

CMatrix rotation(double theta) {
  return mat2(std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta));
}

Representation r2dim(const GroupPtr& g, double theta) {
  const double c = std::cos(2 * theta), s = std::sin(2 * theta);
  return from_generators(g, mat2(0, 1, -1, 0), mat2(-c, s, s, c));
}

Representation r2dim_unitary(const GroupPtr& g) {
  const Complex i(0.0, 1.0);
  return from_generators(g, mat2(i, 0, 0, -i), mat2(0, -1, -1, 0));
}

std::vector<std::pair<std::string, Representation>> d4_irreps(const GroupPtr& g) {
  const CMatrix one = scalar(1.0), minus = scalar(-1.0);
  std::vector<std::pair<std::string, Representation>> out{
      {"A1", from_generators(g, one, one)},
      {"A2", from_generators(g, one, minus)},
      {"B1", from_generators(g, minus, one)},
      {"B2", from_generators(g, minus, minus)},
      {"E", r2dim(g, 0.0)}};
  int dims = 0;
  for (size_t i = 0; i < out.size(); ++i) {
    if (!validate_rep(out[i].second, 1e-12).ok)
      throw Error(ErrorKind::InvalidRepresentation, "D4 irrep " + out[i].first + " is not a homomorphism");
    dims += out[i].second.dim() * out[i].second.dim();
    for (size_t j = 0; j < out.size(); ++j) {
      const Complex ip =
          char_inner_product(character(out[i].second), character(out[j].second));
      if (std::abs(ip - Complex(i == j ? 1.0 : 0.0)) > 1e-12)
        throw Error(ErrorKind::InvalidRepresentation, "D4 irreps fail the orthogonality relations");
    }
  }
  if (dims != g->order()) throw Error(ErrorKind::InvalidRepresentation, "D4 irreps are incomplete");
  return out;
}

const Representation& ExampleBundle::rep(const std::string& key) const {
  for (const auto& [name, r] : reps)
    if (name == key) return r;
  throw Error(ErrorKind::InvalidArgument, "no representation named " + key);
}

GraphAction geometric_action(const GroupPtr& group, const QuantumGraph& graph,
                             const std::vector<std::array<double, 2>>& positions,
                             const std::vector<std::array<double, 4>>& matrices) {
  if (static_cast<int>(positions.size()) != graph.vertex_count() ||
      static_cast<int>(matrices.size()) != group->order())
    throw Error(ErrorKind::InvalidAction, "geometric data does not match graph and group");
  std::vector<ElementMap> maps(group->order());
  for (Element x = 0; x < group->order(); ++x) {
    ElementMap& m = maps[x];
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
      const auto p = move_point(matrices[x], positions[v]);
      VertexId hit = -1;
      for (VertexId w = 0; w < graph.vertex_count() && hit < 0; ++w)
        if (close(p, positions[w])) hit = w;
      if (hit < 0) throw Error(ErrorKind::InvalidAction, "a vertex has no image");
      m.vertices.push_back(hit);
    }
    for (const auto& e : graph.edges()) {
      const VertexId s = m.vertices[e.source], t = m.vertices[e.target];
      EdgeId hit = -1;
      bool flip = false;
      for (const auto& f : graph.edges()) {
        if (f.source == s && f.target == t) hit = f.id;
        else if (f.source == t && f.target == s) hit = f.id, flip = true;
        if (hit >= 0) break;
      }
      if (hit < 0) throw Error(ErrorKind::InvalidAction, "an edge has no image");
      m.edges.push_back(hit);
      m.flips.push_back(flip ? 1 : 0);
    }
  }
  return GraphAction(group, graph, std::move(maps));
}

ExampleBundle square_d4(double a, double b, double c, double theta) {
  if (!(a > 0 && b > 0 && c > 0)) throw Error(ErrorKind::InvalidArgument, "lengths must be positive");
  const GroupPtr g = d4();
  std::vector<std::array<double, 4>> mats;
  for (Element x = 0; x < g->order(); ++x) mats.push_back(plane_matrix(x));

  std::vector<std::array<double, 2>> pos;
  auto vertex_at = [&](const std::array<double, 2>& p) {
    for (size_t i = 0; i < pos.size(); ++i)
      if (close(pos[i], p)) return static_cast<VertexId>(i);
    pos.push_back(p);
    return static_cast<VertexId>(pos.size() - 1);
  };
  // corner, side midpoint, corner leaf tip, side leaf tip
  for (const auto& base : {std::array<double, 2>{1, 1}, {1, 0}, {1.3, 1.1}, {1.2, 0.1}})
    for (const auto& m : mats) vertex_at(move_point(m, base));

  std::vector<EdgeRecord> edges;
  auto add_orbit = [&](std::array<double, 2> s, std::array<double, 2> t, double len) {
    for (const auto& m : mats) {
      const VertexId vs = vertex_at(move_point(m, s)), vt = vertex_at(move_point(m, t));
      bool seen = false;
      for (const auto& e : edges) seen = seen || (e.source == vs && e.target == vt);
      if (!seen) edges.push_back({static_cast<EdgeId>(edges.size()), vs, vt, len});
    }
  };
  add_orbit({1, 0}, {1, 1}, a);
  add_orbit({1, 0}, {1.2, 0.1}, b);
  add_orbit({1, 1}, {1.3, 1.1}, c);

  const QuantumGraph graph = make_standard_graph(static_cast<int>(pos.size()), edges);
  ExampleBundle out{"square-d4", g, geometric_action(g, graph, pos, mats), {}, {}};
  out.reps = d4_irreps(g);
  out.reps.push_back({"R1", r1(g)});
  out.reps.push_back({"R2", r2(g)});
  out.reps.push_back({"R3", r3(g)});
  out.reps.push_back({"R2dim", r2dim(g, theta)});
  out.reps.push_back({"R2unitary", r2dim_unitary(g)});
  out.params = {{"a", a}, {"b", b}, {"c", c}, {"theta", theta}};
  return out;
}

ExampleBundle interval_z2(double l) {
  if (!(l > 0)) throw Error(ErrorKind::InvalidArgument, "length must be positive");
  const GroupPtr g = make_cyclic(2);
  const QuantumGraph graph = make_standard_graph(3, {{0, 0, 1, l}, {1, 0, 2, l}});
  ExampleBundle out{"interval-z2", g,
                    geometric_action(g, graph, {{0, 0}, {-l, 0}, {l, 0}},
                                     {{1, 0, 0, 1}, {-1, 0, 0, 1}}),
                    {}, {}};
  const Subgroup whole = Subgroup::whole(g);
  out.reps.push_back({"trivial", trivial_rep(whole)});
  out.reps.push_back({"sign", Representation::from_function(whole, 1, [](Element x) {
                        return scalar(x == 0 ? 1.0 : -1.0);
                      })});
  out.params = {{"l", l}};
  return out;
}

ExampleBundle ygraph(const std::array<double, 3>& lengths) {
  for (double l : lengths)
    if (!(l > 0)) throw Error(ErrorKind::InvalidArgument, "lengths must be positive");
  std::vector<EdgeRecord> edges{{0, 0, 1, lengths[0]}, {1, 0, 2, lengths[1]}, {2, 0, 3, lengths[2]}};
  std::vector<VertexRecord> vertices{
      {0, {0, 1, 2}, standard_condition(StandardCondition::Neumann, 3)},
      {1, {0}, standard_condition(StandardCondition::Dirichlet, 1)},
      {2, {1}, standard_condition(StandardCondition::Dirichlet, 1)},
      {3, {2}, {CMatrix::Zero(2, 1), CMatrix::Zero(2, 1)}}};
  vertices[3].condition.a(0, 0) = 1.0;
  vertices[3].condition.b(1, 0) = 1.0;
  const GroupPtr g = make_cyclic(1);
  QuantumGraph graph(std::move(vertices), std::move(edges));
  ElementMap id{{0, 1, 2, 3}, {0, 1, 2}, {0, 0, 0}};
  ExampleBundle out{"ygraph", g, GraphAction(g, graph, {id}), {}, {}};
  out.reps.push_back({"trivial", trivial_rep(Subgroup::whole(g))});
  out.params = {{"l1", lengths[0]}, {"l2", lengths[1]}, {"l3", lengths[2]}};
  return out;
}

}  // namespace qg::builtin
