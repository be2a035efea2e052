#pragma once

// Exhaustive enumeration of ring homomorphisms between finite rings.
//
// A homomorphism is determined by the images of an additive generating set.
// The search assigns generator images one at a time, extends the map
// additively over the generated subgroup (coset by coset), and prunes as soon
// as additivity or multiplicativity fails on the part already defined.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "nilspec/hom.hpp"
#include "nilspec/rng.hpp"

namespace nilspec {

inline constexpr std::size_t kDefaultHomSearchBudget = 20'000'000;

struct HomSearchOptions {
  bool unital = false;
  /// Pairs (x, y) forcing h(x) = y.
  std::vector<std::pair<Elem, Elem>> fixed;
  /// Upper bound on elementary extension steps before LimitError.
  std::size_t budget = kDefaultHomSearchBudget;
};

namespace detail {

class HomSearch {
 public:
  HomSearch(RngPtr a, RngPtr b, HomSearchOptions opts)
      : a_(std::move(a)), b_(std::move(b)), opts_(std::move(opts)), img_(a_->size(), kUnset),
        forced_(a_->size(), kUnset) {
    for (auto [x, y] : opts_.fixed) {
      if (x >= a_->size() || y >= b_->size()) throw DomainError("hom search: fixed pair out of range");
      if (forced_[x] != kUnset && forced_[x] != y) conflicting_ = true;
      forced_[x] = y;
    }
    if (opts_.unital) {
      if (!a_->identity() || !b_->identity()) {
        conflicting_ = true;
      } else {
        const Elem one = *a_->identity();
        if (forced_[one] != kUnset && forced_[one] != *b_->identity()) conflicting_ = true;
        forced_[one] = *b_->identity();
      }
    }
    choose_generators();
  }

  std::vector<RngHom> run() {
    std::vector<RngHom> out;
    if (conflicting_) return out;
    img_[a_->zero()] = b_->zero();
    domain_.push_back(a_->zero());
    if (!consistent_from(0)) return out;
    descend(0, out);
    return out;
  }

 private:
  static constexpr Elem kUnset = ~Elem{0};

  void choose_generators() {
    std::vector<bool> span(a_->size(), false);
    std::vector<Elem> members{a_->zero()};
    span[a_->zero()] = true;
    auto take = [&](Elem g) {
      if (span[g]) return;
      gens_.push_back(g);
      const std::size_t base = members.size();
      for (Elem cur = g; !span[cur]; cur = a_->add(cur, g)) {
        for (std::size_t i = 0; i < base; ++i) {
          const Elem x = a_->add(members[i], cur);
          span[x] = true;
          members.push_back(x);
        }
      }
    };
    // Forced elements first so their constraints prune early.
    for (Elem x = 0; x < a_->size(); ++x) {
      if (forced_[x] != kUnset) take(x);
    }
    std::vector<Elem> order(a_->size());
    for (Elem x = 0; x < a_->size(); ++x) order[x] = x;
    std::stable_sort(order.begin(), order.end(),
                     [&](Elem l, Elem r) { return a_->additive_order(l) > a_->additive_order(r); });
    for (Elem x : order) take(x);
  }

  void descend(std::size_t level, std::vector<RngHom>& out) {
    if (level == gens_.size()) {
      // Pairs whose product entered the domain after both factors are not
      // covered by the incremental check, so the full validation decides.
      if (!hom_violation(*a_, *b_, img_)) out.push_back(RngHom::make(a_, b_, img_));
      return;
    }
    const Elem g = gens_[level];
    const std::size_t mark = domain_.size();
    for (Elem t = 0; t < b_->size(); ++t) {
      if (forced_[g] != kUnset && forced_[g] != t) continue;
      if (extend(g, t) && consistent_from(mark)) descend(level + 1, out);
      for (std::size_t i = mark; i < domain_.size(); ++i) img_[domain_[i]] = kUnset;
      domain_.resize(mark);
    }
  }

  // Adjoins generator g with image t. False on an additive conflict.
  bool extend(Elem g, Elem t) {
    const std::size_t base = domain_.size();
    Elem cur = g;
    Elem tcur = t;
    while (img_[cur] == kUnset) {
      for (std::size_t i = 0; i < base; ++i) {
        spend();
        const Elem h = domain_[i];
        const Elem x = a_->add(h, cur);
        img_[x] = b_->add(img_[h], tcur);
        domain_.push_back(x);
      }
      cur = a_->add(cur, g);
      tcur = b_->add(tcur, t);
    }
    return img_[cur] == tcur;
  }

  // Checks forced values and multiplicativity for pairs touching new elements.
  bool consistent_from(std::size_t mark) {
    for (std::size_t i = mark; i < domain_.size(); ++i) {
      const Elem x = domain_[i];
      if (forced_[x] != kUnset && forced_[x] != img_[x]) return false;
      for (Elem y : domain_) {
        spend();
        const Elem xy = a_->mul(x, y);
        if (img_[xy] != kUnset && img_[xy] != b_->mul(img_[x], img_[y])) return false;
      }
    }
    return true;
  }

  void spend() {
    if (++steps_ > opts_.budget) {
      throw LimitError("enumerate_homs: search budget exhausted for " + a_->label() + " -> " + b_->label());
    }
  }

  RngPtr a_;
  RngPtr b_;
  HomSearchOptions opts_;
  std::vector<Elem> img_;
  std::vector<Elem> forced_;
  std::vector<Elem> gens_;
  std::vector<Elem> domain_;
  std::size_t steps_ = 0;
  bool conflicting_ = false;
};

}  // namespace detail

/// All homomorphisms a -> b (unital ones only when requested), each validated
/// exhaustively, in lexicographic order of their generator images.
inline std::vector<RngHom> enumerate_homs(const RngPtr& a, const RngPtr& b, bool unital,
                                          HomSearchOptions opts = {}) {
  opts.unital = opts.unital || unital;
  return detail::HomSearch(a, b, std::move(opts)).run();
}

}  // namespace nilspec
