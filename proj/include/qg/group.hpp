#pragma once

#include <memory>
#include <string>
#include <vector>

namespace qg {

/// Element of a finite group, as an index into its Cayley table.
using Element = int;

/// A finite group given extensionally by its multiplication table.
///
/// `table[g][h]` is the index of g·h. The constructor validates the table
/// exhaustively (Latin square, identity, associativity) and throws
/// Error(InvalidGroup) on failure. Instances are immutable.
class FiniteGroup {
 public:
  FiniteGroup(std::vector<std::vector<Element>> table, Element identity,
              std::vector<std::string> names = {});

  int order() const { return static_cast<int>(table_.size()); }
  Element identity() const { return identity_; }
  Element mul(Element a, Element b) const { return table_[a][b]; }
  Element inv(Element a) const { return inverse_[a]; }
  const std::string& name(Element g) const { return names_[g]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<Element>>& table() const { return table_; }

  /// Index of the element with the given display name; throws InvalidElement.
  Element find(const std::string& name) const;

  bool valid(Element g) const { return g >= 0 && g < order(); }
  void check(Element g) const;

 private:
  std::vector<std::vector<Element>> table_;
  std::vector<Element> inverse_;
  std::vector<std::string> names_;
  Element identity_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A subgroup, stored as the sorted list of its element indices.
class Subgroup {
 public:
  /// Validates closure under multiplication and inversion; throws
  /// Error(InvalidSubgroup).
  Subgroup(GroupPtr parent, std::vector<Element> elements);

  static Subgroup whole(GroupPtr parent);
  static Subgroup trivial(GroupPtr parent);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<Element>& elements() const { return elements_; }
  int order() const { return static_cast<int>(elements_.size()); }
  bool contains(Element g) const;
  bool is_whole() const { return order() == parent_->order(); }
  /// True when every element of this subgroup lies in `other` (same parent).
  bool is_subset_of(const Subgroup& other) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_.get() == b.parent_.get() && a.elements_ == b.elements_;
  }

 private:
  GroupPtr parent_;
  std::vector<Element> elements_;
  std::vector<char> member_;
};

/// Smallest subgroup containing `gens`.
Subgroup subgroup_generate(const GroupPtr& g, const std::vector<Element>& gens);

/// Left coset representatives t_1 = e, t_2, ... (smallest unused index first)
/// with the cosets t_i·H partitioning the parent group.
std::vector<Element> left_transversal(const Subgroup& h);

/// Conjugacy classes of the subgroup's elements under conjugation by the
/// subgroup itself, each class sorted, classes ordered by smallest member.
std::vector<std::vector<Element>> conjugacy_classes(const Subgroup& h);
std::vector<std::vector<Element>> conjugacy_classes(const GroupPtr& g);

// Builders for small groups.
GroupPtr make_cyclic(int n);
/// Dihedral group of order 2n with elements r^k (k < n) then s·r^k, and
/// r^a·s = s·r^{-a}. Names follow "e", "s", "s2", ..., "t", "ts", "ts2", ...
GroupPtr make_dihedral(int n);
GroupPtr make_direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// Quaternion group of order 8.
GroupPtr make_quaternion();
/// Closure of permutations of {0..degree-1} under composition; element 0 is the
/// identity. Composition is (p·q)(x) = p(q(x)).
GroupPtr make_permutation_group(const std::vector<std::vector<int>>& gens);

}  // namespace qg
