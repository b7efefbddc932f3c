#include "qg/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <string>

#include "qg/error.hpp"

namespace qg {

FiniteGroup::FiniteGroup(std::vector<std::vector<Element>> table, Element identity,
                         std::vector<std::string> names)
    : table_(std::move(table)), names_(std::move(names)), identity_(identity) {
  const int n = static_cast<int>(table_.size());
  if (n == 0) throw Error(ErrorKind::InvalidGroup, "group table is empty");
  if (identity_ < 0 || identity_ >= n)
    throw Error(ErrorKind::InvalidGroup, "identity index out of range");
  for (const auto& row : table_)
    if (static_cast<int>(row.size()) != n)
      throw Error(ErrorKind::InvalidGroup, "group table is not square");

  // Latin square
  for (int a = 0; a < n; ++a) {
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (int b = 0; b < n; ++b) {
      const Element r = table_[a][b], c = table_[b][a];
      if (r < 0 || r >= n || c < 0 || c >= n)
        throw Error(ErrorKind::InvalidGroup, "table entry out of range");
      if (seen_row[r]++ || seen_col[c]++)
        throw Error(ErrorKind::InvalidGroup,
                    "row or column " + std::to_string(a) + " is not a permutation");
    }
  }
  for (int g = 0; g < n; ++g)
    if (table_[identity_][g] != g || table_[g][identity_] != g)
      throw Error(ErrorKind::InvalidGroup, "identity does not act trivially");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw Error(ErrorKind::InvalidGroup,
                      "associativity fails at (" + std::to_string(a) + "," +
                          std::to_string(b) + "," + std::to_string(c) + ")");

  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == identity_) inverse_[a] = b;
  for (int a = 0; a < n; ++a)
    if (inverse_[a] < 0 || table_[inverse_[a]][a] != identity_)
      throw Error(ErrorKind::InvalidGroup, "element without two-sided inverse");

  if (names_.empty()) {
    names_.resize(n);
    for (int g = 0; g < n; ++g) names_[g] = "g" + std::to_string(g);
  }
  if (static_cast<int>(names_.size()) != n)
    throw Error(ErrorKind::InvalidGroup, "names list has wrong length");
}

Element FiniteGroup::find(const std::string& name) const {
  for (int g = 0; g < order(); ++g)
    if (names_[g] == name) return g;
  throw Error(ErrorKind::InvalidElement, "no element named '" + name + "'");
}

void FiniteGroup::check(Element g) const {
  if (!valid(g))
    throw Error(ErrorKind::InvalidElement, "element index " + std::to_string(g) +
                                               " out of range for group of order " +
                                               std::to_string(order()));
}

Subgroup::Subgroup(GroupPtr parent, std::vector<Element> elements)
    : parent_(std::move(parent)), elements_(std::move(elements)) {
  if (!parent_) throw Error(ErrorKind::InvalidSubgroup, "subgroup without parent group");
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  member_.assign(parent_->order(), 0);
  for (Element g : elements_) {
    if (!parent_->valid(g))
      throw Error(ErrorKind::InvalidElement, "subgroup element out of range");
    member_[g] = 1;
  }
  if (elements_.empty() || !member_[parent_->identity()])
    throw Error(ErrorKind::InvalidSubgroup, "subgroup must contain the identity");
  for (Element a : elements_) {
    if (!member_[parent_->inv(a)])
      throw Error(ErrorKind::InvalidSubgroup, "subset not closed under inversion");
    for (Element b : elements_)
      if (!member_[parent_->mul(a, b)])
        throw Error(ErrorKind::InvalidSubgroup, "subset not closed under multiplication");
  }
  if (parent_->order() % order() != 0)
    throw Error(ErrorKind::InvalidSubgroup, "subgroup order does not divide group order");
}

Subgroup Subgroup::whole(GroupPtr parent) {
  std::vector<Element> all(parent->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(std::move(parent), std::move(all));
}

Subgroup Subgroup::trivial(GroupPtr parent) {
  const Element e = parent->identity();
  return Subgroup(std::move(parent), {e});
}

bool Subgroup::contains(Element g) const {
  return g >= 0 && g < static_cast<int>(member_.size()) && member_[g];
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
  if (other.parent_.get() != parent_.get()) return false;
  return std::all_of(elements_.begin(), elements_.end(),
                     [&](Element g) { return other.contains(g); });
}

Subgroup subgroup_generate(const GroupPtr& g, const std::vector<Element>& gens) {
  for (Element x : gens) g->check(x);
  std::vector<char> in(g->order(), 0);
  std::deque<Element> queue{g->identity()};
  in[g->identity()] = 1;
  std::vector<Element> found;
  while (!queue.empty()) {
    const Element x = queue.front();
    queue.pop_front();
    found.push_back(x);
    for (Element s : gens) {
      const Element y = g->mul(x, s);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return Subgroup(g, std::move(found));
}

std::vector<Element> left_transversal(const Subgroup& h) {
  const FiniteGroup& g = *h.parent();
  std::vector<char> covered(g.order(), 0);
  std::vector<Element> reps;
  auto take = [&](Element t) {
    reps.push_back(t);
    for (Element x : h.elements()) covered[g.mul(t, x)] = 1;
  };
  take(g.identity());
  for (Element t = 0; t < g.order(); ++t)
    if (!covered[t]) take(t);
  return reps;
}

std::vector<std::vector<Element>> conjugacy_classes(const Subgroup& h) {
  const FiniteGroup& g = *h.parent();
  std::vector<char> done(g.order(), 0);
  std::vector<std::vector<Element>> classes;
  for (Element a : h.elements()) {
    if (done[a]) continue;
    std::vector<Element> cls;
    for (Element x : h.elements()) {
      const Element c = g.mul(g.mul(x, a), g.inv(x));
      if (!done[c]) {
        done[c] = 1;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end());
  return classes;
}

std::vector<std::vector<Element>> conjugacy_classes(const GroupPtr& g) {
  return conjugacy_classes(Subgroup::whole(g));
}

GroupPtr make_cyclic(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "cyclic group order must be >= 1");
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) {
    names[a] = a == 0 ? "e" : (a == 1 ? "s" : "s" + std::to_string(a));
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return std::make_shared<FiniteGroup>(std::move(t), 0, std::move(names));
}

GroupPtr make_dihedral(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "dihedral parameter must be >= 1");
  const int order = 2 * n;
  std::vector<std::vector<Element>> t(order, std::vector<Element>(order));
  std::vector<std::string> names(order);
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < n; ++a) {
      std::string rot = a == 0 ? "" : (a == 1 ? "s" : "s" + std::to_string(a));
      names[x * n + a] = x == 0 ? (a == 0 ? "e" : rot) : "t" + rot;
    }
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < n; ++a)
      for (int y = 0; y < 2; ++y)
        for (int b = 0; b < n; ++b) {
          const int z = x ^ y;
          const int c = (((y ? b - a : a + b) % n) + n) % n;
          t[x * n + a][y * n + b] = z * n + c;
        }
  return std::make_shared<FiniteGroup>(std::move(t), 0, std::move(names));
}

GroupPtr make_direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order(), n = na * nb;
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) {
    names[i] = "(" + a.name(i / nb) + "," + b.name(i % nb) + ")";
    for (int j = 0; j < n; ++j)
      t[i][j] = a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb);
  }
  return std::make_shared<FiniteGroup>(std::move(t), a.identity() * nb + b.identity(),
                                       std::move(names));
}

GroupPtr make_quaternion() {
  // Elements ±1, ±i, ±j, ±k encoded as sign*unit with unit in {1,i,j,k}.
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_mul[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static const char* unit_name[4] = {"1", "i", "j", "k"};
  std::vector<std::vector<Element>> t(8, std::vector<Element>(8));
  std::vector<std::string> names(8);
  for (int x = 0; x < 8; ++x) {
    names[x] = std::string(x >= 4 ? "-" : "") + unit_name[x % 4];
    for (int y = 0; y < 8; ++y) {
      const int u = unit_mul[x % 4][y % 4];
      int s = sign_mul[x % 4][y % 4] * (x >= 4 ? -1 : 1) * (y >= 4 ? -1 : 1);
      t[x][y] = (s < 0 ? 4 : 0) + u;
    }
  }
  return std::make_shared<FiniteGroup>(std::move(t), 0, std::move(names));
}

GroupPtr make_permutation_group(const std::vector<std::vector<int>>& gens) {
  if (gens.empty()) throw Error(ErrorKind::InvalidArgument, "no generators given");
  const size_t degree = gens.front().size();
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::map<std::vector<int>, int> index{{id, 0}};
  std::vector<std::vector<int>> elems{id};
  auto compose = [](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(q.size());
    for (size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
  };
  for (size_t i = 0; i < elems.size(); ++i)
    for (const auto& s : gens) {
      if (s.size() != degree) throw Error(ErrorKind::InvalidArgument, "generator degree mismatch");
      auto p = compose(elems[i], s);
      if (!index.count(p)) {
        index[p] = static_cast<int>(elems.size());
        elems.push_back(p);
      }
    }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = index.at(compose(elems[a], elems[b]));
  return std::make_shared<FiniteGroup>(std::move(t), 0);
}

}  // namespace qg
