#include "freshml/atom.hpp"

#include <algorithm>
#include <map>

#include "freshml/error.hpp"

namespace freshml {

bool is_subset(const World& small, const World& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

World world_union(const World& a, const World& b) {
  World out = a;
  out.insert(b.begin(), b.end());
  return out;
}

std::string format_world(const World& w) {
  std::string out = "{";
  bool first = true;
  for (Atom a : w) {
    if (!first) out += ",";
    out += a.str();
    first = false;
  }
  return out + "}";
}

State::State(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  World seen;
  for (Atom a : atoms_) {
    if (!seen.insert(a).second) {
      throw Error(ErrorCode::AtomEscape, "state lists " + a.str() + " twice");
    }
  }
}

State::State(std::initializer_list<Atom> atoms) : State(std::vector<Atom>(atoms)) {}

bool State::contains(Atom a) const {
  return std::find(atoms_.begin(), atoms_.end(), a) != atoms_.end();
}

std::optional<std::size_t> State::position(Atom a) const {
  auto it = std::find(atoms_.begin(), atoms_.end(), a);
  if (it == atoms_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - atoms_.begin());
}

World State::world() const { return World(atoms_.begin(), atoms_.end()); }

State State::append(Atom a) const {
  State out = *this;
  out.atoms_.push_back(a);
  return out;
}

State State::prepend(Atom a) const {
  State out;
  out.atoms_.reserve(atoms_.size() + 1);
  out.atoms_.push_back(a);
  out.atoms_.insert(out.atoms_.end(), atoms_.begin(), atoms_.end());
  return out;
}

std::string State::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i) out += ",";
    out += atoms_[i].str();
  }
  return out + "]";
}

Permutation Permutation::swap(Atom a, Atom b) {
  Permutation p;
  if (a != b) p.swaps_.emplace_back(a, b);
  return p;
}

Permutation Permutation::from_mapping(std::span<const Atom> from, std::span<const Atom> to) {
  std::map<Atom, Atom> image;
  for (std::size_t i = 0; i < from.size(); ++i) image[from[i]] = to[i];
  // A cycle c0 -> c1 -> ... -> ck is (c0 c1) ∘ (c1 c2) ∘ ... ∘ (ck-1 ck).
  Permutation p;
  World done;
  for (const auto& [start, first_image] : image) {
    if (done.count(start)) continue;
    done.insert(start);
    Atom cur = start;
    Atom next = first_image;
    while (next != start) {
      p.swaps_.emplace_back(cur, next);
      done.insert(next);
      cur = next;
      auto it = image.find(cur);
      next = it == image.end() ? start : it->second;
    }
  }
  return p;
}

Atom Permutation::operator()(Atom a) const {
  for (auto it = swaps_.rbegin(); it != swaps_.rend(); ++it) {
    if (a == it->first) {
      a = it->second;
    } else if (a == it->second) {
      a = it->first;
    }
  }
  return a;
}

Permutation Permutation::compose(const Permutation& other) const {
  Permutation p = *this;
  p.swaps_.insert(p.swaps_.end(), other.swaps_.begin(), other.swaps_.end());
  return p;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.swaps_.assign(swaps_.rbegin(), swaps_.rend());
  return p;
}

World Permutation::support() const {
  World out;
  for (const auto& [a, b] : swaps_) {
    if ((*this)(a) != a) out.insert(a);
    if ((*this)(b) != b) out.insert(b);
  }
  return out;
}

std::string Permutation::str() const {
  if (swaps_.empty()) return "id";
  std::string out;
  for (const auto& [a, b] : swaps_) {
    out += "(" + a.str() + " " + b.str() + ")";
  }
  return out;
}

Atom perm_apply(const Permutation& pi, Atom a) { return pi(a); }

State perm_apply(const Permutation& pi, const State& s) {
  std::vector<Atom> out;
  out.reserve(s.size());
  for (Atom a : s.atoms()) out.push_back(pi(a));
  return State(std::move(out));
}

World perm_apply(const Permutation& pi, const World& w) {
  World out;
  for (Atom a : w) out.insert(pi(a));
  return out;
}

Atom least_atom_not_in(const World& used) {
  std::uint32_t id = 0;
  for (Atom a : used) {
    if (a.id != id) break;
    ++id;
  }
  return Atom{id};
}

}  // namespace freshml
