#pragma once

// The property suite over a corpus of finite rings. Every check appends one
// line to a Report; line order depends only on the corpus and the seed.

#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nilspec/boolean.hpp"
#include "nilspec/construct.hpp"
#include "nilspec/hom_search.hpp"
#include "nilspec/ideal.hpp"
#include "nilspec/morphism.hpp"
#include "nilspec/nilcomp.hpp"
#include "nilspec/report.hpp"
#include "nilspec/ring_spec.hpp"
#include "nilspec/rng.hpp"

namespace nilspec {

/// Rings whose axioms are re-checked cubically; larger rings come from
/// internal constructors only and are trusted.
inline constexpr std::size_t kAxiomCheckLimit = 400;
/// Rings on which the ideal enumeration is compared with a subset filter.
inline constexpr std::size_t kNaiveIdealLimit = 8;

struct Corpus {
  std::vector<RngPtr> rings;       // each unital ring contributes all its ideal extensions
  std::vector<IExtension> extras;  // extensions named directly by a spec
};

/// Z_n for n <= 24 and Z_a × Z_b for 2 <= a <= b, ab <= 36.
inline Corpus default_corpus() {
  Corpus c;
  for (std::size_t n = 1; n <= 24; ++n) c.rings.push_back(build_zmod(n));
  for (std::size_t a = 2; a * a <= 36; ++a) {
    for (std::size_t b = a; a * b <= 36; ++b) c.rings.push_back(build_product(*build_zmod(a), *build_zmod(b)));
  }
  return c;
}

/// A spec object or an array of them. Specs denoting an extension add it to
/// extras; every spec adds its ring.
inline Corpus corpus_from_json(const nlohmann::json& doc) {
  Corpus c;
  auto take = [&](const nlohmann::json& j) {
    ParsedSpec p = parse_ring_spec(j);
    c.rings.push_back(p.ring);
    if (p.ext) c.extras.push_back(std::move(*p.ext));
  };
  if (doc.is_array()) {
    for (const auto& j : doc) take(j);
  } else {
    take(doc);
  }
  return c;
}

inline Corpus load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot read corpus file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(std::string("invalid corpus JSON: ") + e.what());
  }
  return corpus_from_json(doc);
}

/// The same tables with one multiplication entry changed. Built through the
/// unchecked constructor on purpose.
inline RngPtr mutate_ring(const RngPtr& r) {
  const std::size_t n = r->size();
  if (n < 2) throw DomainError("mutate_ring: ring too small to corrupt");
  std::vector<Elem> mul = r->mul_table();
  const std::size_t at = (n - 1) * n + (n - 1);
  mul[at] = static_cast<Elem>((mul[at] + 1) % n);
  return std::make_shared<const FiniteRng>(n, r->add_table(), std::move(mul), r->label() + "*", r->names());
}

struct VerifyOptions {
  std::uint64_t seed = 0;
  bool mutate = false;
  bool ring_checks = true;
  bool extension_checks = true;
  bool unitization_checks = true;
  bool morphism_checks = true;
  bool boolean_checks = true;
  std::size_t boolean_pairs = 1000;
  std::size_t boolean_covers = 100;
};

struct VerifyResult {
  Report report;
  std::vector<std::string> skipped;  // instance and reason, for limits hit

  std::string summary(std::uint64_t seed) const {
    std::ostringstream os;
    os << "SUMMARY checks=" << report.size() << " pass=" << report.passed() << " fail=" << report.failed()
       << " skipped=" << skipped.size() << " seed=" << seed << '\n';
    return os.str();
  }
};

// --- single-ring checks ---------------------------------------------------------

namespace detail {

/// Every subset that contains 0 and passes the ideal test, canonically sorted.
inline std::vector<Ideal> ideals_by_subset_filter(const RngPtr& r) {
  const std::size_t n = r->size();
  std::vector<Ideal> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<bool> in(n);
    std::vector<Elem> members;
    for (Elem x = 0; x < n; ++x) {
      in[x] = ((mask >> x) & 1U) != 0;
      if (in[x]) members.push_back(x);
    }
    if (!in[r->zero()] || ideal_violation(*r, in)) continue;
    out.emplace_back(r, std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline Report ring_checks(const RngPtr& r) {
  Report rep;
  const std::string inst = r->label();
  if (r->size() <= kAxiomCheckLimit) {
    rep.run("ring_axioms", inst, [&]() -> std::optional<std::string> {
      if (auto v = check_axioms(*r)) return v->describe();
      return std::nullopt;
    });
  }
  std::vector<Ideal> ideals;
  rep.run("ideals_closed", inst, [&]() -> std::optional<std::string> {
    ideals = enumerate_ideals(r);
    for (const Ideal& i : ideals) {
      if (auto v = ideal_violation(*r, i.mask())) return i.to_string() + ": " + *v;
    }
    return std::nullopt;
  });
  if (r->size() <= kNaiveIdealLimit) {
    rep.run("ideals_match_subset_filter", inst, [&]() -> std::optional<std::string> {
      const std::vector<Ideal> naive = detail::ideals_by_subset_filter(r);
      if (naive != ideals) {
        return std::to_string(ideals.size()) + " enumerated vs " + std::to_string(naive.size()) + " by subsets";
      }
      return std::nullopt;
    });
  }
  Spectrum spec;
  rep.run("spectrum_routes", inst, [&]() -> std::optional<std::string> {
    spec = spectrum(r);
    const Spectrum alt = spectrum_via_idempotents(r);
    if (spec != alt) {
      return std::to_string(spec.size()) + " primes by enumeration vs " + std::to_string(alt.size()) + " by idempotents";
    }
    return std::nullopt;
  });
  rep.run("nilradical_routes", inst, [&]() -> std::optional<std::string> {
    const NilradicalRoutes routes = nilradical_routes(r, spec);
    if (!routes.agree()) {
      return "nilpotents " + routes.nilpotents.to_string() + " vs prime kernel " + routes.prime_kernel.to_string();
    }
    return std::nullopt;
  });
  rep.run("vanishing_generated", inst, [&]() -> std::optional<std::string> {
    for (const Ideal& i : ideals) {
      if (vanishing(spec, i) != vanishing(spec, generated_ideal(r, i.members()))) return "I=" + i.to_string();
    }
    return std::nullopt;
  });
  rep.run("basic_open_complement", inst, [&]() -> std::optional<std::string> {
    for (Elem a = 0; a < r->size(); ++a) {
      const Spectrum v = vanishing(spec, generated_ideal(r, {a}));
      Spectrum complement;
      for (const PrimeIdeal& p : spec) {
        if (std::find(v.begin(), v.end(), p) == v.end()) complement.push_back(p);
      }
      if (basic_open(spec, a) != complement) return "a=" + r->name(a);
    }
    return std::nullopt;
  });
  rep.run("reduced_quotient", inst, [&]() -> std::optional<std::string> {
    const Quotient q = quotient(r, nilpotent_elements(r));
    const Ideal n = nilpotent_elements(q.ring);
    if (n.size() != 1) return "N(R/N(R)) = " + n.to_string();
    return std::nullopt;
  });
  rep.run("spectrum_discrete", inst, [&]() -> std::optional<std::string> {
    for (const PrimeIdeal& p : spec) {
      for (const PrimeIdeal& q : spec) {
        if (!(p == q) && p.subset_of(q)) return p.to_string() + " < " + q.to_string();
      }
    }
    return std::nullopt;
  });
  rep.run("quotient_kernel", inst, [&]() -> std::optional<std::string> {
    for (const Ideal& i : ideals) {
      const Quotient q = quotient(r, i);
      std::vector<Elem> ker;
      for (Elem x = 0; x < r->size(); ++x) {
        if (q.projection(x) == q.ring->zero()) ker.push_back(x);
      }
      if (ker != i.members()) return "I=" + i.to_string();
    }
    return std::nullopt;
  });
  rep.run("spec_hull_kernel", inst, [&]() -> std::optional<std::string> {
    (void)spec_space_of(r, spec);
    return std::nullopt;
  });
  return rep;
}

// --- extensions ---------------------------------------------------------------

/// Small generating set for i: members not already in the span so far.
inline std::vector<Elem> generators_of(const Ideal& i) {
  const RngPtr& r = i.ring();
  std::vector<Elem> gens;
  Ideal span = Ideal::zero(r);
  for (Elem x : i.members()) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    span = generated_ideal(r, gens);
    if (span == i) break;
  }
  return gens;
}

/// One extension per ideal of a unital r, in canonical ideal order.
inline std::vector<IExtension> ideal_extensions(const RngPtr& r) {
  std::vector<IExtension> out;
  if (!r->unital()) return out;
  for (const Ideal& i : enumerate_ideals(r)) out.push_back(ideal_subrng(r, generators_of(i)));
  return out;
}

using EtaMemo = detail::ExtensionMemo<EtaResult>;

inline Report extension_checks(const IExtension& ext, NilcompCache& cache, EtaMemo& etas) {
  Report rep;
  const std::string inst = ext.label();
  const NilcompResult* nc = nullptr;
  rep.run("nilcomp_assembled", inst, [&]() -> std::optional<std::string> {
    nc = &cache.get(ext);
    return std::nullopt;
  });
  if (!nc) return rep;
  rep.merge(nilcomp_checks(*nc));
  if (!ext.e_object()) return rep;
  rep.run("universal_arrow_unique", inst, [&]() -> std::optional<std::string> {
    (void)universal_arrow(ext);
    return std::nullopt;
  });
  try {
    rep.merge(etas.get(ext, [&] { return eta(ext, cache); }).report);
  } catch (const Error& e) {
    rep.add("eta_computed", inst, false, e.what());
  }
  return rep;
}

// --- unitization --------------------------------------------------------------

/// For one S: NC of the canonical unitization, the reductions
/// U_{km}(S) -> U_m(S) for k = 2, 3 as surjective morphisms fixing S with
/// NC-homeomorphisms, and NC₀(S) ≅ NC₀(S/N(S)).
inline Report unitization_checks(const RngPtr& s, NilcompCache& cache, std::vector<std::string>& skipped) {
  Report rep;
  const std::size_t m = additive_exponent(*s);
  const std::string inst = s->label();
  std::optional<IExtension> base;
  rep.run("unitization_object", inst, [&]() -> std::optional<std::string> {
    base = canonical_extension(s);
    const RngPtr& u = base->amb();
    const std::size_t ns = s->size();
    if (!u->identity() || *u->identity() != (1 % m) * ns) return "identity is not (0,1)";
    if (u->size() <= kAxiomCheckLimit) {
      if (auto v = check_axioms(*u)) return v->describe();
    }
    return std::nullopt;
  });
  if (!base) return rep;
  rep.merge(nilcomp_checks(cache.get(*base)));
  for (std::size_t k : {2U, 3U}) {
    if (s->size() * m * k > max_ring_size()) {
      skipped.push_back(inst + " U" + std::to_string(m * k) + ": over size limit");
      continue;
    }
    rep.run("unitization_reduction", inst + ":U" + std::to_string(m * k) + "->U" + std::to_string(m),
            [&]() -> std::optional<std::string> {
              const IExtension big = unitization(s, m * k);
              const EMorphism red = unitization_reduction(big, *base);
              if (!red.hom().surjective()) return "reduction is not surjective";
              if (!red.fixes_sub()) return "reduction does not fix S";
              return std::nullopt;
            });
    rep.merge(modulus_independence_checks(s, m, m * k, cache));
  }
  rep.merge(reduce_mod_nil_checks(s, cache));
  return rep;
}

// --- morphisms ----------------------------------------------------------------

struct MorphismStats {
  std::size_t homs = 0;
  std::size_t e_morphisms = 0;
  std::size_t fixed_sub = 0;
  std::size_t surjective_fixed_sub = 0;
};

/// All unital homs between ordered pairs of rings; each hom h : R1 -> R2 and
/// each extension (S1, R1) whose image h(S1) is an ideal gives an extension
/// morphism to (h(S1), R2). Morphisms injective on S1 are also re-read as
/// morphisms fixing S1.
inline Report morphism_checks(const std::vector<RngPtr>& rings, const std::vector<std::vector<IExtension>>& exts,
                              NilcompCache& cache, EtaMemo& etas, std::vector<std::string>& skipped,
                              MorphismStats* stats = nullptr) {
  Report rep;
  MorphismStats local;
  for (std::size_t a = 0; a < rings.size(); ++a) {
    for (std::size_t b = 0; b < rings.size(); ++b) {
      if (!rings[a]->unital() || !rings[b]->unital()) continue;
      std::vector<RngHom> homs;
      try {
        homs = enumerate_homs(rings[a], rings[b], true);
      } catch (const LimitError& e) {
        skipped.push_back(rings[a]->label() + "->" + rings[b]->label() + ": " + e.what());
        continue;
      }
      local.homs += homs.size();
      for (std::size_t hi = 0; hi < homs.size(); ++hi) {
        const RngHom& h = homs[hi];
        for (const IExtension& src : exts[a]) {
          const Ideal img = image_of(h, src.image());
          if (ideal_violation(*rings[b], img.mask())) continue;
          const IExtension* dst = nullptr;
          for (const IExtension& e : exts[b]) {
            if (e.image() == img) dst = &e;
          }
          if (!dst) continue;
          const std::string inst = src.label() + "=>" + dst->label() + "#" + std::to_string(hi);
          auto checked = check_e_morphism(h, src, *dst);
          if (auto* rej = std::get_if<Rejection>(&checked)) {
            rep.add("e_morphism", inst, false, rej->describe());
            continue;
          }
          const EMorphism& m = std::get<EMorphism>(checked);
          ++local.e_morphisms;
          try {
            rep.merge(naturality_checks(m, cache.get(src), cache.get(*dst), inst));
          } catch (const Error& e) {
            rep.add("naturality", inst, false, e.what());
          }
          std::optional<EMorphism> fixed;
          try {
            fixed = as_fixed_sub(m);
          } catch (const Error& e) {
            rep.add("fixed_sub_view", inst, false, e.what());
          }
          if (!fixed) continue;
          ++local.fixed_sub;
          if (fixed->hom().surjective()) ++local.surjective_fixed_sub;
          try {
            const EtaResult& er = etas.get(fixed->src(), [&] { return eta(fixed->src(), cache); });
            const EtaResult& et = etas.get(fixed->dst(), [&] { return eta(fixed->dst(), cache); });
            Report cmp = compare_compactifications(*fixed, er, et, cache);
            for (const CheckLine& l : cmp.lines()) rep.add(l.name, inst, l.pass, l.witness);
          } catch (const Error& e) {
            rep.add("eta_inclusion", inst, false, e.what());
          }
        }
      }
    }
  }
  if (stats) *stats = local;
  return rep;
}

// --- driver -------------------------------------------------------------------

namespace detail {

inline bool contains_tables(const std::vector<RngPtr>& seen, const RngPtr& r) {
  return std::any_of(seen.begin(), seen.end(), [&](const RngPtr& s) { return s->same_tables(*r); });
}

/// Runs body, turning a library exception into one FAIL line (or a skip for
/// limits) so that one broken instance cannot abort the suite.
inline void guarded(Report& rep, std::vector<std::string>& skipped, const std::string& name, const std::string& inst,
                    const std::function<void()>& body) {
  try {
    body();
  } catch (const LimitError& e) {
    skipped.push_back(inst + ": " + e.what());
  } catch (const Error& e) {
    rep.add(name, inst, false, e.what());
  }
}

}  // namespace detail

inline VerifyResult verify(Corpus corpus, const VerifyOptions& opts = {}) {
  VerifyResult out;
  Report& rep = out.report;
  std::vector<std::string>& skipped = out.skipped;

  if (opts.mutate) {
    const auto victim = std::find_if(corpus.rings.begin(), corpus.rings.end(),
                                     [](const RngPtr& r) { return r->size() >= 4; });
    if (victim == corpus.rings.end()) throw DomainError("mutation needs a corpus ring with at least 4 elements");
    *victim = mutate_ring(*victim);
  }

  NilcompCache cache;
  EtaMemo etas;
  std::vector<std::vector<IExtension>> exts(corpus.rings.size());
  for (std::size_t i = 0; i < corpus.rings.size(); ++i) {
    detail::guarded(rep, skipped, "extensions_built", corpus.rings[i]->label(),
                    [&] { exts[i] = ideal_extensions(corpus.rings[i]); });
  }
  std::vector<IExtension> all_exts;
  for (const auto& v : exts) all_exts.insert(all_exts.end(), v.begin(), v.end());
  all_exts.insert(all_exts.end(), corpus.extras.begin(), corpus.extras.end());

  if (opts.ring_checks) {
    std::vector<RngPtr> seen;
    auto visit = [&](const RngPtr& r) {
      if (detail::contains_tables(seen, r)) return;
      seen.push_back(r);
      detail::guarded(rep, skipped, "ring_checks", r->label(), [&] { rep.merge(ring_checks(r)); });
    };
    for (const RngPtr& r : corpus.rings) visit(r);
    for (const IExtension& e : all_exts) visit(e.sub());
  }
  if (opts.extension_checks) {
    for (const IExtension& e : all_exts) {
      detail::guarded(rep, skipped, "extension_checks", e.label(), [&] { rep.merge(extension_checks(e, cache, etas)); });
    }
  }
  if (opts.unitization_checks) {
    std::vector<RngPtr> seen;
    for (const IExtension& e : all_exts) {
      if (detail::contains_tables(seen, e.sub())) continue;
      seen.push_back(e.sub());
      detail::guarded(rep, skipped, "unitization_checks", e.sub()->label(),
                      [&] { rep.merge(unitization_checks(e.sub(), cache, skipped)); });
    }
  }
  if (opts.morphism_checks) {
    detail::guarded(rep, skipped, "morphism_checks", "corpus",
                    [&] { rep.merge(morphism_checks(corpus.rings, exts, cache, etas, skipped)); });
  }
  if (opts.boolean_checks) {
    rep.merge(boolean::boolean_suite(opts.seed, opts.boolean_pairs, opts.boolean_covers));
  }
  return out;
}

}  // namespace nilspec
