#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace freshml {

/// A name token. Atoms are identified with their index in a fixed enumeration
/// and printed as `#a<id>`. The index itself is never observable from inside
/// the language except through the deliberately non-equivariant `raw_index`.
struct Atom {
  std::uint32_t id = 0;

  friend auto operator<=>(const Atom&, const Atom&) = default;
  std::string str() const { return "#a" + std::to_string(id); }
};

/// Finite set of atoms.
using World = std::set<Atom>;

bool is_subset(const World& small, const World& big);
World world_union(const World& a, const World& b);
std::string format_world(const World& w);

/// Ordered list of pairwise distinct atoms: the atoms allocated so far.
/// Fresh atoms go on the right (`append`); `prepend` adds on the left.
class State {
 public:
  State() = default;
  /// Throws Error(E_ATOM_ESCAPE) on duplicates.
  explicit State(std::vector<Atom> atoms);
  State(std::initializer_list<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  bool contains(Atom a) const;
  std::optional<std::size_t> position(Atom a) const;
  World world() const;

  /// s ⊕ a. Precondition: a not in s.
  State append(Atom a) const;
  /// a ◁ s. Precondition: a not in s.
  State prepend(Atom a) const;

  friend bool operator==(const State&, const State&) = default;
  std::string str() const;

 private:
  std::vector<Atom> atoms_;
};

/// Finite permutation, stored as a list of transpositions t1 ... tn denoting
/// the composite t1 ∘ ... ∘ tn (tn is applied first).
class Permutation {
 public:
  Permutation() = default;
  static Permutation swap(Atom a, Atom b);
  /// Permutation sending from[i] to to[i]; `from` and `to` must enumerate the
  /// same set of atoms.
  static Permutation from_mapping(std::span<const Atom> from, std::span<const Atom> to);

  Atom operator()(Atom a) const;
  /// (this ∘ other): apply `other` first.
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;
  /// Atoms moved by the permutation.
  World support() const;

  const std::vector<std::pair<Atom, Atom>>& transpositions() const { return swaps_; }
  std::string str() const;

 private:
  std::vector<std::pair<Atom, Atom>> swaps_;
};

Atom perm_apply(const Permutation& pi, Atom a);
State perm_apply(const Permutation& pi, const State& s);
World perm_apply(const Permutation& pi, const World& w);

/// Least-index atom outside `used`.
Atom least_atom_not_in(const World& used);

}  // namespace freshml

template <>
struct std::hash<freshml::Atom> {
  std::size_t operator()(const freshml::Atom& a) const noexcept {
    return std::hash<std::uint32_t>{}(a.id);
  }
};
