#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fracsh/classes.hpp"
#include "fracsh/error.hpp"
#include "fracsh/rational.hpp"

namespace fracsh {

enum class Role { main, sea };
enum class SplitRule { none, odd_rule, even_rule, custom, search };

inline std::string_view to_string(Role r) { return r == Role::main ? "main" : "sea"; }

inline std::string_view to_string(SplitRule r) {
  switch (r) {
    case SplitRule::none: return "none";
    case SplitRule::odd_rule: return "odd_rule";
    case SplitRule::even_rule: return "even_rule";
    case SplitRule::custom: return "custom";
    case SplitRule::search: return "search";
  }
  return "?";
}

struct SpinComponent {
  Rational value;  // signed
  ClassId cls;
  Role role;
};

struct DecompositionNode {
  Rational spin;
  Role role = Role::main;
  SplitRule rule = SplitRule::none;  // none for leaves
  std::vector<DecompositionNode> children;
};

// levels[k] lists the signed components after k splitting steps;
// levels[0] is the root alone.
struct DecompositionTree {
  DecompositionNode root;
  std::vector<std::vector<SpinComponent>> levels;

  int depth() const { return static_cast<int>(levels.size()) - 1; }
};

// Rules a split of a composite spin has to satisfy.
//   R1  the parts sum exactly to the parent
//   R2  no two parallel class-I parts of equal value
//   R3  no class-III parts at all
//   R4  at least two parts
struct RuleSet {
  bool r1 = true;
  bool r2 = true;
  bool r3 = true;
  bool r4 = true;
};

struct Verdict {
  bool valid = true;
  std::vector<std::string> violated;  // rule ids, in order R1..R4
};

namespace detail {

inline std::int64_t unit_denominator(const Rational& r, const char* what) {
  if (!r.is_unit_fraction() || r.den() < 2)
    throw DomainError(std::string(what) + ": expected a unit fraction +-1/k with k >= 2, got " + r.to_string());
  return r.den();
}

}  // namespace detail

inline ClassId component_class(const Rational& value) {
  return particle_class(detail::unit_denominator(value, "component_class")).id;
}

inline SplitRule canonical_rule(const Rational& s) {
  const std::int64_t d = detail::unit_denominator(s, "canonical_split");
  if (d == 2) return SplitRule::custom;
  return d % 2 == 1 ? SplitRule::odd_rule : SplitRule::even_rule;
}

// The exact splitting ladder:
//   1/2       -> 1/3 + 1/3 - 1/6
//   1/d odd   -> 1/(d+2) + 1/(d(d+2)) + 1/(d(d+2))
//   1/d even  -> 1/(d+1) + 1/(d(d+1))
// Negative spins split into the negated parts. The first part is the
// largest; for 1/2 all three parts are of comparable size.
inline std::vector<Rational> canonical_split(const Rational& s) {
  const std::int64_t d = detail::unit_denominator(s, "canonical_split");
  const Rational sign(s.sign());
  std::vector<Rational> parts;
  if (d == 2) {
    parts = {Rational(1, 3), Rational(1, 3), Rational(-1, 6)};
  } else if (d % 2 == 1) {
    parts = {Rational(1, d + 2), Rational(1, d * (d + 2)), Rational(1, d * (d + 2))};
  } else {
    parts = {Rational(1, d + 1), Rational(1, d * (d + 1))};
  }
  for (auto& p : parts) p *= sign;
  return parts;
}

inline Verdict validate_split(const Rational& parent, const std::vector<Rational>& parts, const RuleSet& rules = {}) {
  if (parts.empty()) throw DomainError("validate_split: no parts");
  for (const auto& p : parts) detail::unit_denominator(p, "validate_split");

  Verdict verdict;
  auto violate = [&](const char* id) {
    verdict.valid = false;
    verdict.violated.emplace_back(id);
  };

  if (rules.r1) {
    Rational sum;
    for (const auto& p : parts) sum += p;
    if (sum != parent) violate("R1");
  }
  if (rules.r2) {
    std::map<Rational, int> parallel;
    bool clash = false;
    for (const auto& p : parts) {
      if (component_class(p) == ClassId::I && ++parallel[p] > 1) clash = true;
    }
    if (clash) violate("R2");
  }
  if (rules.r3) {
    if (std::any_of(parts.begin(), parts.end(), [](const Rational& p) { return component_class(p) == ClassId::III; }))
      violate("R3");
  }
  if (rules.r4 && parts.size() < 2) violate("R4");
  return verdict;
}

struct SearchOptions {
  std::int64_t max_denominator = 50;
  int max_parts = 3;
  int max_opposite = 1;  // parts whose sign differs from the parent
  RuleSet rules;
};

// All valid splits of s into 2..max_parts signed unit fractions, each
// strictly smaller in magnitude than s and with denominator at most
// max_denominator. Parts within a split are ordered by denominator (same
// sign as s first); splits are ordered lexicographically by that sequence.
inline std::vector<std::vector<Rational>> search_splits(const Rational& s, const SearchOptions& options = {}) {
  const std::int64_t d0 = detail::unit_denominator(s, "search_splits");
  if (options.max_parts < 2 || options.max_parts > 4) throw LimitError("search_splits: max_parts must be 2..4");
  if (options.max_denominator > 10000) throw LimitError("search_splits: denominator bound above 10000");
  const Rational sign(s.sign());
  const Rational target = s.abs();

  // Work with |s|; a part is (denominator, +1 same sign | -1 opposite).
  struct Part {
    std::int64_t den;
    int dir;
    auto operator<=>(const Part&) const = default;
  };
  auto key_less = [](const Part& a, const Part& b) {
    return a.den != b.den ? a.den < b.den : a.dir > b.dir;  // +1 before -1
  };

  std::vector<std::vector<Part>> found;
  std::vector<Part> chosen;

  auto try_finish = [&](const Rational& rest, int opposite) {
    if (rest.is_zero() || !rest.is_unit_fraction()) return;
    const Part last{rest.den(), rest.sign()};
    if (last.den <= d0 || last.den > options.max_denominator) return;
    if (last.dir < 0 && opposite + 1 > options.max_opposite) return;
    if (!chosen.empty() && key_less(last, chosen.back())) return;
    chosen.push_back(last);
    found.push_back(chosen);
    chosen.pop_back();
  };

  auto recurse = [&](auto&& self, const Rational& rest, int opposite) -> void {
    if (chosen.size() + 1 >= 2) try_finish(rest, opposite);
    if (static_cast<int>(chosen.size()) + 1 >= options.max_parts) return;
    const Part start = chosen.empty() ? Part{d0 + 1, 1} : chosen.back();
    for (std::int64_t d = start.den; d <= options.max_denominator; ++d) {
      for (const int dir : {1, -1}) {
        const Part next{d, dir};
        if (key_less(next, start)) continue;
        if (dir < 0 && opposite + 1 > options.max_opposite) continue;
        chosen.push_back(next);
        self(self, rest - Rational(dir, d), opposite + (dir < 0));
        chosen.pop_back();
      }
    }
  };
  recurse(recurse, target, 0);

  std::sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), key_less);
  });

  std::vector<std::vector<Rational>> result;
  for (const auto& split : found) {
    std::vector<Rational> parts;
    for (const auto& p : split) parts.push_back(Rational(p.dir, p.den) * sign);
    if (validate_split(s, parts, options.rules).valid) result.push_back(std::move(parts));
  }
  return result;
}

enum class Scheme { canonical, search };

inline constexpr int max_expand_depth = 6;

namespace detail {

inline std::vector<SpinComponent> frontier_values(const std::vector<DecompositionNode*>& frontier) {
  std::vector<SpinComponent> out;
  out.reserve(frontier.size());
  for (const auto* n : frontier) out.push_back({n->spin, component_class(n->spin), n->role});
  return out;
}

}  // namespace detail

// Repeatedly splits a unit-fraction spin.
//
// canonical: step 1 splits the root by canonical_split; step 2 splits every
// step-1 part; from step 3 on only positive main components split again,
// while sea components and the negative branch are carried unchanged. In
// each split the first (largest) part is main and the paired small parts
// are sea, except for the three parts of 1/2, which are all main.
//
// search: every component is replaced by its first valid split from
// search_splits; LimitError if some component has none within the bound.
inline DecompositionTree expand(const Rational& s, int depth, Scheme scheme = Scheme::canonical,
                                const SearchOptions& options = {}) {
  if (depth < 0 || depth > max_expand_depth)
    throw LimitError("expand: depth must be in 0.." + std::to_string(max_expand_depth));
  detail::unit_denominator(s, "expand");

  DecompositionTree tree;
  tree.root.spin = s;
  std::vector<DecompositionNode*> frontier{&tree.root};
  tree.levels.push_back(detail::frontier_values(frontier));

  for (int step = 1; step <= depth; ++step) {
    std::vector<DecompositionNode*> next;
    for (DecompositionNode* node : frontier) {
      bool split = true;
      if (scheme == Scheme::canonical && step >= 3) split = node->role == Role::main && node->spin > 0;

      if (!split) {
        next.push_back(node);
        continue;
      }

      std::vector<Rational> parts;
      if (scheme == Scheme::canonical) {
        node->rule = canonical_rule(node->spin);
        parts = canonical_split(node->spin);
      } else {
        const auto options_found = search_splits(node->spin, options);
        if (options_found.empty())
          throw LimitError("expand: no valid split of " + node->spin.to_string() + " with denominators <= " +
                           std::to_string(options.max_denominator));
        node->rule = SplitRule::search;
        parts = options_found.front();
      }

      node->children.reserve(parts.size());
      for (std::size_t k = 0; k < parts.size(); ++k) {
        const bool main = node->rule == SplitRule::custom || k == 0 || node->rule == SplitRule::search;
        node->children.push_back({parts[k], main ? Role::main : Role::sea, SplitRule::none, {}});
      }
      for (auto& child : node->children) next.push_back(&child);
    }
    frontier = std::move(next);
    tree.levels.push_back(detail::frontier_values(frontier));
  }
  return tree;
}

// The three largest-magnitude components at a level (ties keep level
// order), or all of them when there are fewer than three.
inline std::vector<Rational> main_components(const DecompositionTree& tree, int level) {
  if (level < 0 || level > tree.depth()) throw DomainError("main_sum: level out of range");
  std::vector<Rational> values;
  for (const auto& c : tree.levels[static_cast<std::size_t>(level)]) values.push_back(c.value);
  std::stable_sort(values.begin(), values.end(), [](const Rational& a, const Rational& b) { return a.abs() > b.abs(); });
  if (values.size() > 3) values.resize(3);
  return values;
}

inline Rational main_sum(const DecompositionTree& tree, int level) {
  Rational sum;
  for (const auto& v : main_components(tree, level)) sum += v;
  return sum;
}

inline Rational level_sum(const DecompositionTree& tree, int level) {
  if (level < 0 || level > tree.depth()) throw DomainError("level_sum: level out of range");
  Rational sum;
  for (const auto& c : tree.levels[static_cast<std::size_t>(level)]) sum += c.value;
  return sum;
}

// part / whole as an exact percentage.
inline Rational ratio_to(const Rational& whole, const Rational& part) {
  if (whole.is_zero()) throw DomainError("ratio_to: zero reference spin");
  return part / whole * Rational(100);
}

// One decimal, round half up: 18/35 * 100 -> "51.4%".
inline std::string format_percent(const Rational& percent) {
  // floor(10 x + 1/2) = floor((20 p + q) / (2 q))
  const __int128 num = static_cast<__int128>(percent.num()) * 20 + percent.den();
  const __int128 den = static_cast<__int128>(percent.den()) * 2;
  __int128 tenths = num / den;
  if (num % den != 0 && num < 0) --tenths;
  const bool negative = tenths < 0;
  const __int128 mag = negative ? -tenths : tenths;
  return std::string(negative ? "-" : "") + std::to_string(static_cast<long long>(mag / 10)) + "." +
         std::to_string(static_cast<int>(mag % 10)) + "%";
}

}  // namespace fracsh
